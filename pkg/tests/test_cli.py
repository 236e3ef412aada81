import json
import math

import pytest

from ubm.cli import EXIT_NUMERICAL, EXIT_USAGE, main, read_moments

LN4 = 2 * math.log(2)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_moments_json(capsys):
    code, out, _ = run(capsys, "moments", "boolean", "--t", 1, "--order", 2)
    assert code == 0
    obj = json.loads(out)
    assert obj["schema_version"] == 1
    assert obj["config"]["t"] == 1.0
    (m1, i1), (m2, _) = obj["moments"]
    assert m1 == pytest.approx(0.606531, abs=1e-6) and i1 == 0
    assert m2 == pytest.approx(-0.238651, abs=1e-6)


def test_moments_monotone_values(capsys):
    _, out, _ = run(capsys, "moments", "monotone", "--t", LN4, "--order", 2)
    m = [re for re, _ in json.loads(out)["moments"]]
    assert m == pytest.approx([0.5, -0.25], abs=1e-15)
    _, out, _ = run(capsys, "moments", "monotone", "--t", 0, "--order", 5)
    assert [re for re, _ in json.loads(out)["moments"]] == [1.0] * 5


def test_moments_csv(capsys):
    code, out, _ = run(capsys, "moments", "monotone", "--t", 1, "--order", 3, "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,re,im" and len(lines) == 4
    assert float(lines[1].split(",")[1]) == math.exp(-0.5)


def test_density(capsys):
    code, out, _ = run(capsys, "density", "--t", LN4, "--samples", 9)
    obj = json.loads(out)
    assert code == 0
    assert obj["support"]["theta_max"] == pytest.approx(math.pi / 2)
    rows = obj["samples"]
    mid = rows[4]
    assert mid["theta"] == 0 and mid["density"] == pytest.approx(math.sqrt(2))
    assert [r["density"] for r in rows] == [r["density"] for r in reversed(rows)]
    assert all(r["density"] == 0 for r in rows if abs(r["theta"]) > math.pi / 2)


def test_density_csv_header(capsys):
    _, out, _ = run(capsys, "density", "--t", 1, "--samples", 4, "--format", "csv")
    lines = out.splitlines()
    assert lines[0].startswith("# support_min=") and lines[2] == "theta,density,unbounded"


def test_atoms(capsys):
    code, out, _ = run(capsys, "atoms", "--t", 2, "--truncation-mass", 0.999)
    obj = json.loads(out)
    assert code == 0
    assert obj["summary"]["captured_mass"] >= 0.999
    assert obj["summary"]["truncation_index"] == len(obj["atoms"]) - 1
    a0 = obj["atoms"][0]
    assert a0["x"] == pytest.approx(math.cos(a0["alpha"]))


def test_convolve_round_trip(capsys, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.csv"
    run(capsys, "moments", "monotone", "--t", 0.5, "--order", 12, "--output", f1)
    run(capsys, "moments", "monotone", "--t", 1.0, "--order", 12, "--format", "csv", "--output", f2)
    assert read_moments(f1).order == 12 and read_moments(f2).order == 12
    code, out, _ = run(capsys, "convolve", f1, f2, "--mode", "monotone")
    assert code == 0
    _, ref, _ = run(capsys, "moments", "monotone", "--t", 1.5, "--order", 12)
    got = json.loads(out)["moments"]
    want = json.loads(ref)["moments"]
    assert max(abs(complex(*g) - complex(*w)) for g, w in zip(got, want)) < 1e-9


def test_convolve_order_errors(capsys, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "moments", "boolean", "--t", 1, "--order", 4, "--output", f1)
    run(capsys, "moments", "boolean", "--t", 1, "--order", 6, "--output", f2)
    code, _, err = run(capsys, "convolve", f1, f2, "--mode", "boolean")
    assert code == EXIT_USAGE and "--order" in err
    code, out, _ = run(capsys, "convolve", f1, f2, "--mode", "boolean", "--order", 3)
    assert code == 0 and json.loads(out)["order"] == 3
    code, _, _ = run(capsys, "convolve", f1, tmp_path / "missing.json", "--mode", "boolean")
    assert code == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ("moments", "monotone", "--t", -1),
        ("moments", "monotone", "--t", "nan"),
        ("moments", "boolean", "--t", 1, "--order", 0),
        ("density", "--t", 0),
        ("density", "--t", 1, "--samples", 1),
        ("atoms", "--t", 1, "--truncation-mass", 1.5),
        ("verify", "--suite", "semigroup", "--tolerance", -1),
        ("verify", "--suite", "fock", "--grid", 100),
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE and out == "" and "error" in err


def test_argparse_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "semigroup")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and len(obj["checks"]) == 4
    code, out, _ = run(capsys, "verify", "--suite", "semigroup", "--tolerance", 1e-300)
    assert code == EXIT_NUMERICAL and not json.loads(out)["passed"]


def test_atoms_cap_is_numerical_failure(capsys, monkeypatch):
    from ubm import boolean

    orig = boolean.TruncationPolicy

    def capped(**kw):
        return orig(hard_cap=10, **kw)

    monkeypatch.setattr("ubm.cli.TruncationPolicy", capped)
    code, _, err = run(capsys, "atoms", "--t", 1, "--truncation-mass", 0.99999999)
    assert code == EXIT_NUMERICAL and "numerical failure" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("moments", "boolean", "--t", 0.7, "--order", 9),
        ("density", "--t", 1.3, "--samples", 33, "--format", "csv"),
        ("atoms", "--t", 1, "--truncation-mass", 0.9999),
    ],
)
def test_deterministic_bytes(capsys, argv):
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_fock_grid(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fock", "--grid", 512)
    obj = json.loads(out)
    assert code == 0 and obj["config"]["grid"] == 512
    names = [c["name"] for c in obj["checks"]]
    assert "fock.order_n8" in names
