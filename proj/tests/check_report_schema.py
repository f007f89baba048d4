#!/usr/bin/env python3
"""Validate reports written by frame_partition against the published schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CASES = [
    ["--kind", "orthonormal", "--dim", "4", "--count", "4"],
    ["--kind", "duplicates", "--dim", "2", "--multiplicity", "3"],
    ["--kind", "harmonic", "--dim", "4", "--count", "16"],
    ["--kind", "random_unit", "--dim", "6", "--count", "40", "--seed", "5", "--field", "complex"],
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for k, case in enumerate(CASES):
            src = os.path.join(tmp, f"in{k}.json")
            subprocess.run([exe, "generate", *case, "-o", src], check=True)
            for mode in ("feichtinger", "uniform"):
                rep = os.path.join(tmp, f"rep{k}_{mode}.json")
                subprocess.run([exe, "partition", src, "--mode", mode, "-o", rep], check=True,
                               stdout=subprocess.DEVNULL)
                with open(rep) as f:
                    errors = list(validator.iter_errors(json.load(f)))
                status = "ok" if not errors else "INVALID"
                print(f"{' '.join(case)} [{mode}]: {status}")
                for e in errors:
                    print(f"  {list(e.path)}: {e.message}")
                failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
