"""End-to-end checks of the command-line tool."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN = Path(sys.argv[1])
SCHEMA = json.loads(Path(sys.argv[2]).read_text())


def run(*args, ok=True):
    p = subprocess.run([str(BIN), *map(str, args)], capture_output=True, text=True)
    if ok and p.returncode != 0:
        raise AssertionError(f"{args}: exit {p.returncode}\n{p.stderr}")
    return p


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        prefix = tmp / "d5"
        run("sample", "--problem", "dtlz5", "--n", 60, "--seed", 2, "--out", prefix)
        x, f = Path(f"{prefix}_x.csv"), Path(f"{prefix}_f.csv")
        assert x.read_text().startswith("x1,x2,"), "x header"
        assert f.read_text().startswith("f1,f2,f3\n"), "f header"
        assert len(x.read_text().splitlines()) == 61

        args = ["analyze", "--x", x, "--f", f, "--bootstrap", 20, "--seed", 3]
        a = run(*args).stdout
        assert a == run(*args).stdout, "reports differ between runs"
        run(*args, "--out", tmp / "r.json")
        doc = json.loads(a)
        other = json.loads((tmp / "r.json").read_text())
        # the run echo records argv, which differs by --out
        assert {k: v for k, v in doc.items() if k != "run"} == {k: v for k, v in other.items() if k != "run"}
        jsonschema.validate(doc, SCHEMA)
        assert doc["results"][0]["s2"]["violated"] is True
        assert "timings" not in doc["results"][0]

        run(*args, "--svg", tmp / "d.svg", "--diagram-csv", tmp / "d.csv", "--timings", "--out", tmp / "t.json")
        assert (tmp / "d.svg").read_text().startswith("<svg")
        assert (tmp / "d.csv").read_text().startswith("dim,birth,death,essential\n")
        jsonschema.validate(json.loads((tmp / "t.json").read_text()), SCHEMA)

        # objectives are optional: S1 only
        doc = json.loads(run("analyze", "--x", x, "--bootstrap", 10).stdout)
        jsonschema.validate(doc, SCHEMA)
        assert doc["results"][0]["s2"] is None

        # failures: structured JSON on stderr and a nonzero exit
        p = run("analyze", "--x", tmp / "missing.csv", ok=False)
        assert p.returncode == 1, p.returncode
        err = json.loads(p.stderr)["error"]
        assert err["status"] == "io", err
        (tmp / "bad.csv").write_text("x1\n1\nfoo\n")
        p = run("analyze", "--x", tmp / "bad.csv", ok=False)
        assert json.loads(p.stderr)["error"]["status"] == "parse"
        assert run("sample", "--problem", "zdt1", ok=False).returncode == 2
        assert run("analyze", ok=False).returncode == 2

        p = run("trials", "--problem", "dtlz5", "--trials", 2, "--n", 40, "--bootstrap", 10, "--rows", tmp / "rows.csv")
        lines = p.stdout.splitlines()
        assert lines[0] == "Problem,Trials,Completed,Average delta,S1_unsatisfied,S2_unsatisfied", lines
        assert lines[1].startswith("dtlz5,2,2,"), lines
        assert len((tmp / "rows.csv").read_text().splitlines()) == 3

        p = run("bench", "--n", "20,30", "--maxdim", "1,2", "--repeats", 1, "--simplex-cap", 2000)
        rows = p.stdout.splitlines()
        assert rows[0].startswith("problem,n,maxdim,delta_max,status,simplices"), rows
        assert len(rows) == 5
        assert any(",DNF," in r for r in rows[1:]), rows
    print("cli smoke: ok")


if __name__ == "__main__":
    main()
