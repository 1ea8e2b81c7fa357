"""Validate every golden report against the schema named by its "report" or
"proposition" field."""

import json
import pathlib
import sys

import jsonschema


def main(schema_dir: str, golden_dir: str) -> int:
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text())
               for p in pathlib.Path(schema_dir).glob("*.schema.json")}
    failures = 0
    files = sorted(pathlib.Path(golden_dir).glob("*.json"))
    for path in files:
        doc = json.loads(path.read_text())
        kind = "verify" if "proposition" in doc else doc.get("report")
        try:
            jsonschema.validate(doc, schemas[kind])
        except (KeyError, jsonschema.ValidationError) as err:
            failures += 1
            print(f"{path.name}: {err}")
    print(f"{len(files) - failures}/{len(files)} reports valid")
    return 1 if failures or not files else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
