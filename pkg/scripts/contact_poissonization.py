"""Walk the contact structure on R^3 through packing and Poissonization.

Prints the Schouten square of Lambda, the Jacobi-pair defects, the packed
Jacobi defect on TR^3 + R and the Poissonized bivector on the bar extension.
"""

from __future__ import annotations

from algebroids import fixtures as fx
from algebroids.lie import direct_sum_line, schouten_bracket
from algebroids.line import poissonize
from algebroids.poisson import (
    JacobiAlgebroid,
    jacobi_defect,
    jacobi_pair_check,
    pack_jacobi_pair,
    poisson_defect,
    unit_line_cosection,
)
from algebroids.tensors import wedge


def main() -> int:
    L, pair = fx.contact_r3()
    print("Lambda          ", pair.Lambda)
    print("E               ", pair.E)
    print("[Lambda,Lambda] ", schouten_bracket(L, pair.Lambda, pair.Lambda))
    print("E ^ Lambda      ", wedge(pair.E.as_multisection(), pair.Lambda))
    print("Poisson defect of Lambda alone:", poisson_defect(L, pair.Lambda))
    print("\nJacobi pair check\n" + str(jacobi_pair_check(L, pair)))

    J = JacobiAlgebroid(direct_sum_line(L), unit_line_cosection(L.rank + 1))
    packed = pack_jacobi_pair(pair)
    print("\npacked bivector ", packed)
    print("Jacobi defect   ", jacobi_defect(J, packed))

    pi_tilde, report = poissonize(J, packed)
    print("\nPoissonization  ", pi_tilde)
    print(report)
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
