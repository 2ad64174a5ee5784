"""Runs every CLI verb, validates the JSON against the ttd/1 schema and checks
exit codes, the documented examples and byte-for-byte determinism."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

TTD, SCHEMA = sys.argv[1], sys.argv[2]

with open(SCHEMA) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

failures = []


def run(*args, env=None):
    proc = subprocess.run([TTD, *args], capture_output=True, env=env)
    return proc.returncode, proc.stdout


def case(name, args, rc, check=None, env=None):
    code, out = run(*args, env=env)
    problems = []
    if code != rc:
        problems.append(f"exit {code}, expected {rc}")
    doc = None
    try:
        doc = json.loads(out)
    except ValueError as e:
        problems.append(f"invalid JSON: {e}")
    if doc is not None:
        errs = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        problems += [f"schema: {'/'.join(map(str, e.path))}: {e.message}" for e in errs[:5]]
        if check and not problems:
            msg = check(doc)
            if msg:
                problems.append(msg)
    print(("PASS " if not problems else "FAIL ") + name)
    for p in problems:
        print("    " + p)
    if problems:
        failures.append(name)
    return out


def expect(cond, msg):
    return None if cond else msg


case("build 2,-1,-2", ["build", "--rst", "2,-1,-2"], 0,
     lambda d: expect(d["curve"]["F"] == ["68", "192", "768", "688", "312", "72", "12"], "F mismatch"))
case("build 1,1,1 is degenerate", ["build", "--rst", "1,1,1"], 1,
     lambda d: expect(d["status"] == "error" and d["degeneracy"]["vanishing"] == [4], "delta_4 not reported"))
case("build malformed rational", ["build", "--rst", "1/0,1,2"], 1,
     lambda d: expect(d["error"]["code"] == "usage", "expected usage error"))
case("isogeny -2,1,2", ["isogeny", "--rst", "-2,1,2"], 0)
case("verify 2,-1,-2", ["verify", "--rst", "2,-1,-2"], 0)
case("verify --map psi0prime", ["verify", "--rst", "-2,1,2", "--map", "psi0prime"], 0,
     lambda d: expect([m["map"] for m in d["maps"]] == ["psi0prime"], "wrong maps"))
case("count 2,-1,-2 p=13", ["count", "--rst", "2,-1,-2", "--p", "13"], 0,
     lambda d: expect(d["J_order"] % 9 == 0, "9 does not divide #J"))
case("count --tilde", ["count", "--rst", "2,-1,-2", "--p", "13", "--tilde"], 0)
case("count at a bad prime", ["count", "--rst", "2,-1,-2", "--p", "11"], 1)
case("selmer -2,1,2 sigma-dual", ["selmer", "--rst", "-2,1,2", "--direction", "sigma-dual"], 0,
     lambda d: expect(d["dimension"] == 5, f"dimension {d['dimension']}"))
case("selmer -2,1,2 sigma", ["selmer", "--rst", "-2,1,2", "--direction", "sigma"], 0,
     lambda d: expect(d["dimension"] == 0, f"dimension {d['dimension']}"))
case("auto 2,-1,-2", ["auto", "--rst", "2,-1,-2"], 0,
     lambda d: expect(d["selmer"]["sigma_dual"]["dimension"] == 4, "sigma-dual dimension"))
case("auto --map psi1", ["auto", "--rst", "2,-1,-2", "--map", "psi1"], 0)
case("certify-identities", ["certify-identities"], 0,
     lambda d: expect(any(i["identity"] == "falsified" and not i["pass"] for i in d["identities"]),
                      "falsified control not caught"))

code, _ = run("frobnicate")
print(("PASS" if code == 1 else "FAIL") + " unknown verb exits 1")
if code != 1:
    failures.append("unknown verb")

# determinism, including across thread counts, and --out
args = ["selmer", "--rst", "2,-1,-2", "--direction", "sigma-dual", "--seed", "3"]
env1 = dict(os.environ, TTD_THREADS="1")
env4 = dict(os.environ, TTD_THREADS="4")
a = run(*args, env=env1)[1]
b = run(*args, env=env4)[1]
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "out.json")
    run(*args, "--out", path)
    with open(path, "rb") as f:
        c = f.read()
same = a == b == c and len(a) > 0
print(("PASS" if same else "FAIL") + " byte-identical output across runs, threads and --out")
if not same:
    failures.append("determinism")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
