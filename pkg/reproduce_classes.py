"""
reproduce_classes.py

Builds a representation for every Euler class allowed in genus 2..4,
re-measures each one (also after a conjugation drawn from the configured
seed), and checks the sign of its relation product.
Run from the project root.
"""

import sys

from euler_engine.config import configure_logging, load_config
from euler_engine.construct import build_euler, random_conjugate
from euler_engine.errors import EulerEngineError
from euler_engine.lift import euler_class, parity, relation_residual


def main():
    configure_logging()
    cfg = load_config()
    failures = 0
    print(f"[reproduce] conjugation seed {cfg.seed}")

    for genus in range(2, 5):
        bound = 2 * genus - 2
        print(f"[reproduce] genus {genus}: classes {-bound}..{bound}")
        for k in range(-bound, bound + 1):
            try:
                rho = build_euler(genus, k, cfg)
                e = euler_class(rho, cfg)
                sign = parity(rho, cfg)
                moved = random_conjugate(rho, cfg)
                e_moved = euler_class(moved, cfg)
            except EulerEngineError as exc:
                print(f"[reproduce]   k={k:+d} FAILED: {type(exc).__name__}: {exc}")
                failures += 1
                continue
            ok = e == k and e_moved == k and sign == (-1) ** (k % 2)
            failures += not ok
            print(f"[reproduce]   k={k:+d} e={e:+d} conjugated={e_moved:+d} parity={sign:+d} residual={relation_residual(rho):.1e} {'ok' if ok else 'MISMATCH'}")

    print(f"[reproduce] Done, {failures} failure(s).")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
