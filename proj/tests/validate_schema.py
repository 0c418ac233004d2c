"""Runs each subcommand with --json and validates the output against its schema definition."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ("orbit", ["orbit", "X^2-2", "--x", "0", "--N", "4"]),
    ("multdep", ["multdep", "4", "8"]),
    ("multdep", ["multdep", "5", "0"]),
    ("rank", ["--domain", "qi", "rank", "i", "2"]),
    ("rank-one", ["rank-one", "9", "1/3"]),
    ("rank-one", ["rank-one", "2", "3"]),
    ("leveque", ["leveque", "X^2*(X-1)^3*(X-2)", "--m", "2"]),
    ("classify", ["--domain", "qi", "classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2"]),
    ("classify", ["classify", "(X-1)*(X-2)*(X-3)", "--m", "5"]),
    ("exceptional", ["exceptional", "X^2*(X-1)^3*(X-2)", "(X-1)*(X-2)"]),
    ("hat", ["hat", "4*X*(X-1)^2", "--l", "2"]),
    ("verify-semiconj", ["verify-semiconj", "X*(X-1)^2", "X^3-X", "--l", "2", "--N", "2"]),
    ("common-iterate", ["common-iterate", "X^2+2", "X^4+4*X^2+6"]),
    ("common-iterate", ["common-iterate", "X^2", "X^3"]),
    ("standard-pair", ["standard-pair", "--kind", "specific", "--m", "3", "--n", "3", "--a", "2"]),
    ("scan-solutions", ["scan-solutions", "X^2", "2*X^2-1", "--H", "50"]),
    ("rds-check", ["rds-check", "X^2+2", "--x", "0", "--N", "8"]),
    ("rds-check", ["rds-check", "--seq", "3,9,3"]),
    ("ppd", ["ppd", "X^2+2", "--x", "0", "--N", "6"]),
    ("sqfree", ["sqfree", "X^2*(X-1)^3"]),
    ("sqfree", ["sqfree", "--int", "1446"]),
    ("count", ["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3"]),
    ("abc-check", ["abc-check", "--trials", "20", "--seed", "3"]),
    ("iterate", ["iterate", "X^2+2", "--n", "3"]),
    ("dickson", ["dickson", "--m", "5", "--a", "2"]),
    ("twist", ["twist", "X^3-X", "--alpha", "-1"]),
    ("decompose", ["decompose", "X^4+4*X^2+6"]),
    ("bt-shape", ["bt-shape", "X^2", "X^2", "--phi", "X", "--f1", "X^2", "--g1", "X^2"]),
    ("family", ["family", "X*(X+1)^2", "X^3+X", "--f-hat", "X^3+X", "--g-hat", "X^3+X", "--l", "2", "--x", "4"]),
]


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)
    failures = 0
    for name, args in CASES:
        proc = subprocess.run([exe, "--json", *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        sub = {"$ref": f"#/$defs/{name}", "$defs": schema["$defs"]}
        try:
            jsonschema.validate(json.loads(proc.stdout), sub, cls=jsonschema.Draft202012Validator)
            print(f"ok   {name}")
        except jsonschema.ValidationError as err:
            print(f"FAIL {name}: {err.message}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
