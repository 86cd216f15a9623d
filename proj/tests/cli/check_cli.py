"""End-to-end checks of the parapon command line: trace, fit, plot, verify."""

import json
import math
import pathlib
import subprocess
import sys

import jsonschema

exe, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
work.mkdir(parents=True, exist_ok=True)
report_schema = json.loads((schema_dir / "report.schema.json").read_text())
fit_schema = json.loads((schema_dir / "fit.schema.json").read_text())
failures = []


def run(*args, code=0):
    p = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
    if p.returncode != code:
        failures.append(f"{' '.join(map(str, args))}: exit {p.returncode}, wanted {code}\n{p.stderr}")
    return p


def check(cond, what):
    if not cond:
        failures.append(what)


# trace -> fit round trip
x2 = work / "x2.csv"
run("trace", 3, "X2", "-o", x2)
lines = x2.read_text().splitlines()
check(lines[0] == "y1,x,y", "trace header")
rows = [l for l in lines[1:] if not l.startswith("#")]
check(len(rows) > 390, f"trace rows {len(rows)}")
check(all(l.startswith("# gap,") for l in lines[1:] if l.startswith("#")), "gap comment format")

fit = json.loads(run("fit", x2).stdout)
jsonschema.validate(fit, fit_schema)
check(fit["model"] == "conic", "X2 model")
check(fit["features"]["class"] == "parabola", "X2 class")
check(abs(fit["features"]["focal_distance"] - 1 / 3) < 1e-6, "X2 focal distance")
check([a["model"] for a in fit["attempts"]] == ["line", "circle", "conic"], "auto attempts order")

x4 = work / "x4.csv"
run("trace", 3, "X4", "--count", 200, "-o", x4)
fit4 = json.loads(run("fit", x4, "--model", "line").stdout)
jsonschema.validate(fit4, fit_schema)
check(abs(fit4["line"]["x"] - (5 - 2 * math.sqrt(2))) < 1e-9, "X4 line x")

two = work / "two.csv"
two.write_text("y1,x,y\n0,1,1\n1,2,3\n")
fit2 = json.loads(run("fit", two, "--model", "line").stdout)
check(fit2["rms_residual"] == 0, "two-point line exact")

# determinism
a = run("trace", 4, "C1", "--polar", "--count", 50).stdout
b = run("trace", 4, "C1'", "--count", 50).stdout
check(a == b and len(a) > 0, "polar trace deterministic and flag equals suffix")

x26 = work / "x26.csv"
run("trace", 3, "X26'", "-o", x26)
pts = [tuple(map(float, l.split(",")[1:])) for l in x26.read_text().splitlines()[1:] if not l.startswith("#")]
check(max(math.hypot(x + 1, y) for x, y in pts) < 1e-9, "X26' at the focus")

# plot
fitfile = work / "x2.json"
run("fit", x2, "-o", fitfile)
svg1 = run("plot", x2, x26, "--fit", fitfile, "--fit", fitfile, "--caustic", 0.8284).stdout
svg2 = run("plot", x2, x26, "--fit", fitfile, "--fit", fitfile, "--caustic", 0.8284).stdout
check(svg1 == svg2 and svg1.strip().endswith("</svg>"), "svg deterministic")
empty = work / "empty.csv"
empty.write_text("y1,x,y\n")
run("plot", empty, code=2)

# usage errors
bad = work / "bad.csv"
bad.write_text("y1,x,y\n1,2\n")
run("fit", bad, code=2)
run("trace", 3, "X7", code=2)
run("trace", 4, "X2", code=2)
run("closure", 2, code=2)
run("closure", 3, "--bracket", 0.1, 0.2, code=2)
run("verify", "--filter", "nothing-matches", code=2)
run("frobnicate", code=2)

# verify
report = work / "report.json"
p = run("verify", "--json", report, code=1)
rep = json.loads(report.read_text())
jsonschema.validate(rep, report_schema)
failed = sorted(c["name"] for c in rep["checks"] if c["kind"] == "theorem" and not c["pass"])
check(failed == ["x2.parabola", "x3.parabola"], f"theorem failures {failed}")
check(rep["summary"]["conjecture_anomalies"] == 0, "conjecture anomalies")

only = work / "x99.json"
run("verify", "--filter", "x99*", "--json", only)
names = [c["name"] for c in json.loads(only.read_text())["checks"]]
check(names == ["polar.x99.circle"], f"filter x99* gave {names}")

run("verify", "--filter", "x[23].parabola", "--tol", "fit=10", "-q")

pert = work / "perturbed.json"
run("verify", "--perturb", "1e-3", "--json", pert, "-q", code=1)
for c in json.loads(pert.read_text())["checks"]:
    if c["kind"] == "theorem" and c["radius_sensitive"]:
        check(not c["pass"], f"{c['name']} passes under perturbation")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
