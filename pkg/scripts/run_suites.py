"""Run every regression suite with default ranges and print one summary line
per suite; exits nonzero iff some case fails (flags are reported, not failed)."""

import argparse
import sys

from gordian import suites


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--show-flags", action="store_true")
    args = ap.parse_args()
    params = suites.SuiteParams(workers=args.workers)
    ok = True
    for name in suites.suite_names():
        r = suites.run_suite(name, params)
        print(r.summary())
        for row in r.rows:
            if row.status == suites.FAIL or (args.show_flags and row.status == suites.FLAG):
                print(f"    {row.status}: {row.case}: {row.detail}")
        ok &= r.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
