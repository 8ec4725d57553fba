"""Runs every geostat subcommand on fixtures and checks schemas, exit codes and determinism."""

import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

CASES = [
    ("classical-distance", ["p.json", "q.json"], [], 0),
    ("jeffreys", ["p.json"], [], 0),
    ("multinomial-experiment", ["p.json"], ["--samples", "1000", "--trials", "300"], 0),
    ("monotone-stress", [], ["--trials", "200"], 0),
    ("mean", ["mixed.json", "tilted.json"], ["--f", "geometric"], 0),
    ("monotone-metric", ["mixed.json", "tangent.json"], ["--f", "harmonic"], 0),
    ("fidelity", ["mixed.json", "tilted.json"], [], 0),
    ("bures-distance", ["qutrit_a.json", "qutrit_b.json"], [], 0),
    ("geodesic", ["mixed.json", "tilted.json"], ["--samples", "5"], 0),
    ("optimal-measurement", ["qutrit_a.json", "qutrit_b.json"], [], 0),
    ("povm-search", ["plus.json", "tilted.json"], ["--grid", "24"], 0),
    ("billiard", [], ["--dim", "3", "--seed", "7"], 0),
    ("billiard", ["qutrit_a.json", "qutrit_b.json"], [], 0),
    ("verify-all", [], [], 0),
    # failures
    ("fidelity", ["truncated.json", "mixed.json"], [], 1),
    ("fidelity", ["traceless.json", "mixed.json"], [], 1),
    ("fidelity", ["rectangular.json", "mixed.json"], [], 1),
    ("fidelity", ["mixed.json"], [], 1),
    ("fidelity", ["mixed.json", "qutrit_a.json"], [], 1),
    ("jeffreys", ["p.json"], ["--format", "csv"], 1),
    ("monotone-stress", [], ["--trials", "0"], 1),
    ("optimal-measurement", ["plus.json", "tilted.json"], [], 2),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--geostat", required=True)
    ap.add_argument("--schemas", required=True, type=pathlib.Path)
    ap.add_argument("--fixtures", required=True, type=pathlib.Path)
    args = ap.parse_args()

    schemas = {p.name: json.loads(p.read_text()) for p in args.schemas.glob("*.schema.json")}
    registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())

    failures = []
    for cmd, inputs, flags, want in CASES:
        argv = [args.geostat, cmd, *[str(args.fixtures / f) for f in inputs], *flags]
        label = " ".join([cmd, *inputs, *flags])
        runs = [subprocess.run(argv, capture_output=True, text=True, timeout=300) for _ in range(2)]
        first = runs[0]
        if first.returncode != want:
            failures.append(f"{label}: exit {first.returncode}, expected {want}\n{first.stdout}{first.stderr}")
            continue
        if first.stdout != runs[1].stdout:
            failures.append(f"{label}: output differs between runs")
        schema = schemas["error.schema.json" if want else f"{cmd}.schema.json"]
        try:
            doc = json.loads(first.stdout)
            jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            failures.append(f"{label}: {e}")
            continue
        print(f"ok   {label} (exit {want})")

    for f in failures:
        print(f"FAIL {f}", file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
