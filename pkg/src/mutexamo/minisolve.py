"""Tiny DIMACS solver speaking the SAT-competition output convention.

    python -m mutexamo.minisolve FILE.cnf

Prints ``s SATISFIABLE`` plus a ``v`` line and exits 10, or prints
``s UNSATISFIABLE`` and exits 20; exits 0 with ``s UNKNOWN`` when the search
budget runs out.  Only meant for small instances and for exercising the
``bench`` harness without an external solver.
"""

import sys

from .cnf import read_dimacs
from .oracle import OracleGuardError, solve


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m mutexamo.minisolve FILE.cnf", file=sys.stderr)
        return 1
    f = read_dimacs(argv[0])
    try:
        model = solve(f)
    except OracleGuardError:
        print("s UNKNOWN")
        return 0
    if model is None:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    print("v " + " ".join(str(v if val else -v) for v, val in model.items()) + " 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
