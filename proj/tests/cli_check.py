"""Run the command-line tool on fixtures and validate its JSON output."""

import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

TOOL = sys.argv[1]
SCHEMAS = Path(sys.argv[2])

CASES = [
    ("parse", "<a,b;a^2b^-3>", []),
    ("parse", "< ; >", []),
    ("normalize", "<a,b;a^-1ba^-1b^-1a>", []),
    ("normalize", "<a,b;(ab)^3>", []),
    ("magnus-tree", "<a,b;a^2b^-3>", []),
    ("magnus-tree", "<a,b,c;a b a^-1 c>", []),
    ("complex", "<a,b;aba^-1b^-1>", []),
    ("complex", "<a;a^3>", ["--radius", "2"]),
    ("ball", "<a,b;aba^-1b^-1>", ["--radius", "3"]),
    ("ends", "<a,b;a^2>", ["--radius", "5"]),
    ("ends", "<a;a^3>", ["--radius", "4"]),
    ("freiheitssatz", "<a,b;a^2b^-3>", ["--subset", "b"]),
    ("pro-pi1", "<a,b;aba^-1b^-1>", ["--radius", "5"]),
    ("semistable", "<a,b;a^2>", ["--radius", "4"]),
]

registry = Registry()
for path in SCHEMAS.glob("*.json"):
    registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))

failures = 0


def check(ok, label):
    global failures
    print(("pass " if ok else "FAIL ") + label)
    failures += 0 if ok else 1


def run(args, env=None):
    return subprocess.run([TOOL, *args], capture_output=True, text=True, env=env, timeout=120)


outputs = {}
for command, text, extra in CASES:
    proc = run([command, text, *extra])
    label = f"{command} {text} {' '.join(extra)}".strip()
    if proc.returncode != 0:
        check(False, f"{label}: exit {proc.returncode}: {proc.stderr.strip()}")
        continue
    doc = json.loads(proc.stdout)
    schema = registry.contents(f"{command}.json")
    validator = jsonschema.Draft202012Validator(schema, registry=registry)
    errors = sorted(validator.iter_errors(doc), key=str)
    check(not errors, f"{label}: schema" + (f": {errors[0].message}" if errors else ""))
    outputs.setdefault(command, []).append(doc)

tree = outputs["magnus-tree"][0]["root"]
check(tree["case"] == "Case2" and tree["tag"].get("p") == 2 and tree["tag"].get("q") == -3, "Case2 root p=2 q=-3")
check(tree["children"][0]["case"] == "Case1", "Case1 child")


def leaves(node):
    return [node] if not node["children"] else [l for c in node["children"] for l in leaves(c)]


check(all(l["case"] == "Base" for l in leaves(tree)), "Base leaves")
check(outputs["ends"][0]["classification"] == "Many", "ends of <a,b;a^2> at radius 5")
check(outputs["ends"][1]["classification"] == "Zero", "ends of <a;a^3>")

# Deterministic given the arguments.
first = run(["ball", "<a,b;aba^-1b^-1>", "--radius", "3", "--seed", "7"]).stdout
check(first == run(["ball", "<a,b;aba^-1b^-1>", "--radius", "3", "--seed", "7"]).stdout, "repeatable output")

# Presentation read from a file.
source = Path(os.environ.get("TMPDIR", "/tmp")) / f"cli_check_{os.getpid()}.txt"
source.write_text("<a,b;a^2>\n")
check(run(["parse", str(source)]).returncode == 0, "presentation from a file")
source.unlink()

check(run(["parse", "<a,b;a^2"]).returncode == 1, "syntax error exits 1")
check(run(["parse", "<a,a;a>"]).returncode == 1, "duplicate generator exits 1")
check(run(["normalize", "<a,b;a b, b>"]).returncode == 1, "two relators exit 1")
check(run(["ball", "<a;a^2>", "--radius", "0"]).returncode == 1, "radius 0 exits 1")
check(run(["ends", "<a;a^2>", "--format", "dot"]).returncode == 1, "unsupported format exits 1")

env = dict(os.environ, MAGNUS_BUDGET_STATES="0")
check(run(["ball", "<a;a^2>"], env=env).returncode == 1, "bad MAGNUS_BUDGET_STATES exits 1")

# Baumslag-Solitar ball with a starved search leaves queries unresolved.
starved = ["ball", "<a,b;b a b^-1 a^-2>", "--radius", "5", "--budget-states", "1"]
loose = run(starved)
check(loose.returncode == 0 and not json.loads(loose.stdout)["complete"], "Unknown verdicts exit 0 without --strict")
check(run([*starved, "--strict"]).returncode == 2, "Unknown verdicts exit 2 with --strict")
env = dict(os.environ, MAGNUS_BUDGET_STATES="1")
check(run([*starved[:-2], "--strict"], env=env).returncode == 2, "MAGNUS_BUDGET_STATES sets the default budget")
check(run(["ends", "<a,b;aba^-1b^-1>", "--strict"]).returncode == 0, "conclusive run exits 0 with --strict")

dot = run(["ball", "<a,b;aba^-1b^-1>", "--radius", "2", "--format", "dot"]).stdout
check(dot.startswith("digraph"), "dot output")

sys.exit(1 if failures else 0)
