#!/usr/bin/env python3
"""Runs the built-in examples listed in tests/regression/manifest.json."""

import argparse
import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--symred", default=str(ROOT / "build" / "symred"), help="path to the symred binary")
    ap.add_argument("--manifest", default=str(ROOT / "tests" / "regression" / "manifest.json"))
    args = ap.parse_args()

    manifest = json.loads(pathlib.Path(args.manifest).read_text(encoding="utf-8"))
    failures = 0
    for ex in manifest["examples"]:
        proc = subprocess.run([args.symred, *ex["args"]], capture_output=True, text=True)
        missing = [e for e in ex["expect"] if e not in proc.stdout]
        ok = proc.returncode == ex["exit"] and not missing
        failures += not ok
        status = "ok  " if ok else "FAIL"
        print(f"{status} symred {' '.join(ex['args'])}")
        if not ok:
            print(f"     exit {proc.returncode} (want {ex['exit']}), missing {missing}")
            sys.stdout.write(proc.stdout + proc.stderr)
    print(f"{len(manifest['examples']) - failures}/{len(manifest['examples'])} examples reproduced")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
