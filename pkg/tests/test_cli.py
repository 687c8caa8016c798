import io
import json
import subprocess
import sys

import pytest

from qpartitions.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_pmf_json():
    code, out, _ = call("pmf", "--measure", "Q", "--n", "3", "--q", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [e["prob"] for e in doc["entries"]] == ["64/101", "36/101", "1/101"]


def test_pmf_csv_and_rational_q():
    code, out, _ = call("pmf", "--n", "2", "--q", "5/2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "partition,prob,decimal"
    assert len(out.splitlines()) == 3


def test_pmf_tilde():
    code, out, _ = call("pmf", "--measure", "tildeP", "--n", "1", "--q", "2")
    entry = json.loads(out)["entries"][0]
    assert code == 0 and entry["partition"] == [1]
    lo, hi = (float(eval(entry[k])) for k in ("lo", "hi"))  # "a/b" strings
    assert lo <= 0.2887880951 <= hi


def test_tail():
    code, out, _ = call("tail", "--measure", "P", "--n", "3", "--q", "2", "--r", "2")
    assert code == 0
    assert json.loads(out) == {"direct": "1/64", "rogers_selberg": "1/64"}
    code, out, _ = call("tail", "--measure", "Q", "--n", "3", "--q", "2", "--r", "2")
    assert json.loads(out) == {"direct": "1/101"}


def test_column():
    code, out, _ = call("column", "--measure", "Q", "--n", "2", "--q", "2", "--k", "1")
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert row == {"k": 1, "marginal": "4/5", "closed_form": "3/4", "lower": "9/256", "upper": row["upper"]}


def test_bounds_command():
    code, out, _ = call("bounds", "--q", "2", "--q", "3", "--n-min", "3", "--n-max", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,r_or_k,q,lower,exact,upper")
    assert len(lines) == 1 + 2 * (2 + 3 + 4)


def test_verify():
    code, out, _ = call("verify", "--n-max", "6", "--q", "2")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert len(records) == 20 and all(r["passed"] for r in records)


def test_verify_rejects_small_q():
    code, _, err = call("verify", "--q", "3/2")
    assert code == 2 and "usage" in err


def test_sample_ndjson():
    code, out, _ = call("sample", "--measure", "P", "--n", "3", "--q", "2", "--seed", "4", "--count", "5")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert lines[0] == {"measure": "P", "n": 3, "q": "2/1", "seed": 4, "count": 5}
    assert all(sum(l["partition"]) == 3 for l in lines[1:])


def test_sample_requires_n():
    assert call("sample", "--measure", "Q", "--q", "2")[0] == 2


def test_mcmc_and_rsk():
    code, out, _ = call("mcmc", "--n", "5", "--q", "2", "--steps", "20", "--thin", "5", "--seed", "1")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(recs) == 4
    assert set(recs[0]) == {"perm", "maj", "maj_inv", "shape", "lis", "lds"}
    code, out, _ = call("rsk", "--perm", "3,1,2")
    rec = json.loads(out)
    assert code == 0 and rec["shape"] == [2, 1] and rec["insertion"] == [[1, 2], [3]]
    assert call("rsk", "--perm", "[2,1]")[0] == 0
    assert call("rsk", "--perm", "1,1")[0] == 2


def test_ztable():
    code, out, _ = call("z-table", "--n", "3", "--q", "2")
    assert code == 0
    assert json.loads(out)["z"] == ["1/1", "2/1", "20/9", "808/441"]


@pytest.mark.parametrize(
    "argv",
    [
        ["pmf", "--n", "3", "--q", "two"],
        ["pmf", "--n", "3", "--q", "1/0"],
        ["pmf", "--n", "3", "--q", "1"],
        ["frobnicate"],
        [],
        ["tail", "--n", "3", "--q", "2"],
    ],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2
    assert "usage" in err


def test_byte_determinism():
    argv = ["sample", "--measure", "tildeQ", "--q", "2", "--seed", "8", "--count", "40"]
    assert call(*argv)[1] == call(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qpartitions.cli", "tail", "--n", "3", "--q", "2", "--r", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"direct": "1/64", "rogers_selberg": "1/64"}\n'
