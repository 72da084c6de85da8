"""Validate a JSON document against one of the published schemas.

Usage: validate_json.py SCHEMA_NAME [FILE]   (reads stdin when FILE is omitted)
"""

import json
import pathlib
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "schemas"


def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        contents = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(contents)))
    return Registry().with_resources(resources)


def main(argv):
    if len(argv) not in (2, 3):
        print(__doc__.strip(), file=sys.stderr)
        return 2
    name = argv[1] if argv[1].endswith(".schema.json") else f"{argv[1]}.schema.json"
    schema = json.loads((SCHEMAS / name).read_text())
    text = pathlib.Path(argv[2]).read_text() if len(argv) == 3 else sys.stdin.read()
    validator = Draft202012Validator(schema, registry=registry())
    errors = sorted(validator.iter_errors(json.loads(text)), key=lambda e: list(e.path))
    for e in errors:
        print(f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
