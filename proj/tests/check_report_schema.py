"""Runs `solvgeo report --json` and validates the output against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
proc = subprocess.run([cli, "report", "--json", "--criterion", "2", "--criterion", "3"],
                      capture_output=True, text=True, check=False)
if proc.returncode not in (0, 1):
    sys.exit(f"report exited with {proc.returncode}: {proc.stderr}")
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.validate(json.loads(proc.stdout), schema)
print("report JSON matches schema")
