import json
import os
import sys

sys.path.insert(0, os.environ.get("QGKM_MODULE_DIR", "build"))

import _qgkm  # noqa: E402

GOLDEN = """{
  "n": 2,
  "N": 4,
  "summands": [[1,4],[2,2],[2,2]],
  "e": [2,2],
  "gsub_mode": "explicit",
  "explicit_classes": ["n=2; U(1,4); N=4",
                       "n=2; U(1,1)+U(2,3); N=4",
                       "n=2; U(2,2)+U(2,2); N=4"]
}"""


def test_run_config_golden():
    report = json.loads(_qgkm.run_config(GOLDEN))
    assert report["fixed_point_count"] == 8
    assert report["moment_graph"]["edge_count"] == 13
    assert len(report["strata"]) == 5
    assert sorted(s["stratum_dim"] for s in report["strata"]) == [1, 2, 2, 2, 3]
    assert sorted(d["fixed_point_count"] for d in report["desing"]) == [3, 3, 6]
    assert report["verify_basis"]["all_ok"] is True
    assert report["status"] == "ok"


def test_determinism():
    assert _qgkm.run_config(GOLDEN) == _qgkm.run_config(GOLDEN)


def test_inline_and_helpers():
    report = json.loads(_qgkm.run_inline("n=2; U(1,4)+U(2,2)+U(2,2); e=2,2"))
    assert report["fixed_point_count"] == 8
    assert _qgkm.dimension_vector("n=2; U(1,4)+U(2,2)+U(2,2)") == [4, 4]
    assert _qgkm.fixed_point_count("n=2; U(1,4)+U(2,2)+U(2,2)", [2, 2]) == 8
    assert _qgkm.hom_dim("n=2; U(1,4)", "n=2; U(1,4)") == 2
    assert _qgkm.stratum_dim("n=2; U(1,1)+U(2,3); N=4", "n=2; U(1,4)+U(2,2)+U(2,2)") == 3
    graph = json.loads(_qgkm.moment_graph_json("n=2; U(1,4)+U(2,2)+U(2,2)", [2, 2]))
    assert len(graph["vertices"]) == 8
    assert len(graph["edges"]) == 13


def test_cli_subprocess():
    import subprocess

    exe = os.path.join(os.environ.get("QGKM_MODULE_DIR", "build"), "qgkm")
    if not os.path.exists(exe):
        import pytest

        pytest.skip("cli binary not next to the module")
    out = subprocess.run(
        [exe, "fixed-points", "--rep", "n=2; U(1,4)+U(2,2)+U(2,2); e=2,2"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["fixed_point_count"] == 8


def test_config_errors_raise():
    import pytest

    with pytest.raises(Exception):
        _qgkm.run_config('{"n": 2, "e": [1, 1]}')
