#!/usr/bin/env python3
"""Runs every subcommand over the corpus and validates the JSON reports against the schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, corpus = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    validator = jsonschema.Draft202012Validator(schema)
    jsonschema.Draft202012Validator.check_schema(schema)

    problems = sorted(corpus.rglob("*.p"))
    runs = []
    for p in problems:
        runs.append(["symbols", str(p)])
        runs.append(["consistency", str(p), "--max-domain-size", "3", "--timeout", "5"])
        if "unsat" in p.parts:
            runs.append(["reprove", str(p), "--unsat-mode", "--method", "semantic", "--chain-minima"])
        elif "independence" in p.parts:
            for method in ("naive", "failfast", "random"):
                runs.append(["independence", str(p), "--method", method, "--trials", "5"])
        else:
            runs.append(["reprove", str(p)])
            runs.append(["minimize", str(p)])
    runs.append(["symbols", "/nonexistent/problem.p"])
    runs.append(["reprove", str(corpus / "toys" / "inconsistent.p")])

    failures = 0
    for args in runs:
        proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True, timeout=300)
        try:
            report = json.loads(proc.stdout)
            validator.validate(report)
            if report["exit_code"] != proc.returncode:
                raise ValueError(f"exit_code {report['exit_code']} but process returned {proc.returncode}")
        except (ValueError, jsonschema.ValidationError) as e:
            failures += 1
            print(f"FAIL {' '.join(args)}: {e}", file=sys.stderr)
    print(f"{len(runs) - failures}/{len(runs)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
