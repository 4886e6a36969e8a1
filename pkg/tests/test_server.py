import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from ensemble_lens.analysis import AnalysisConfig, document_bytes, run_analysis
from ensemble_lens.generators import gen_campbell1d
from ensemble_lens.server import create_app


@pytest.fixture(scope="module")
def ensemble():
    return gen_campbell1d(80, seed=11)


@pytest.fixture(scope="module")
def client(ensemble):
    return TestClient(create_app(ensemble))


class TestEnsembleEndpoint:
    def test_metadata(self, client, ensemble):
        body = client.get("/api/ensemble").json()
        assert body["name"] == ensemble.name
        assert body["members"] == 80
        assert body["params"] == 4
        assert body["samples"] == 181
        assert body["param_names"] == ["X1", "X2", "X3", "X4"]
        assert body["time"][0] == -90.0


class TestAnalysisEndpoint:
    def test_default_coverage(self, client):
        response = client.get("/api/analysis")
        assert response.status_code == 200
        doc = response.json()
        assert doc["config"]["outer_coverage"] == 0.95
        assert doc["level_sets"]["outer"]["coverage"] == 0.95

    def test_matches_cli_document(self, client, ensemble):
        body = client.get("/api/analysis").content
        assert body == document_bytes(run_analysis(ensemble, AnalysisConfig()))

    def test_cache_returns_identical_bytes(self, client):
        first = client.get("/api/analysis", params={"outer": "0.99"}).content
        second = client.get("/api/analysis", params={"outer": "0.99"}).content
        assert first == second

    def test_outlier_monotonicity(self, client):
        high = client.get("/api/analysis", params={"outer": "0.99"}).json()
        low = client.get("/api/analysis", params={"outer": "0.95"}).json()
        assert len(high["outliers"]) <= len(low["outliers"])

    def test_custom_grid(self, client):
        doc = client.get("/api/analysis", params={"grid": "40,50"}).json()
        assert doc["density"]["grid"]["nx"] == 40
        assert doc["density"]["grid"]["ny"] == 50
        assert len(doc["density"]["values"]) == 50        # rows are y
        assert len(doc["density"]["values"][0]) == 40

    def test_invalid_coverage_422(self, client):
        assert client.get("/api/analysis", params={"outer": "0.4"}).status_code == 422
        assert client.get("/api/analysis", params={"outer": "1.5"}).status_code == 422

    def test_malformed_params_400(self, client):
        assert client.get("/api/analysis", params={"outer": "lots"}).status_code == 400
        assert client.get("/api/analysis", params={"grid": "100"}).status_code == 400
        assert client.get("/api/analysis", params={"bandwidth": "wide"}).status_code == 400
        assert client.get("/api/analysis", params={"grid": "4,4"}).status_code == 400


class TestSelectionEndpoint:
    def test_empty_predicates_select_all(self, client):
        response = client.post("/api/selection", json={"predicates": []})
        assert response.status_code == 200
        body = response.json()
        assert body["indices"] == list(range(80))
        assert all(abs(s) < 1e-12 for s in body["sensitivity"]["scores"].values())
        assert body["brackets"]["X1"][0] <= body["brackets"]["X1"][1]

    def test_band_tail_selection(self, client, ensemble):
        steps = {"predicates": [{
            "predicate": {"kind": "band_tail", "side": "upper",
                          "coverage": 0.95, "at": 180},
            "mode": "intersect",
        }]}
        body = client.post("/api/selection", json=steps).json()
        result = run_analysis(ensemble)
        upper = result.band(0.95).upper[180]
        expected = np.flatnonzero(ensemble.curves[:, 180] > upper)
        assert body["indices"] == expected.tolist()

    def test_selection_is_stateless(self, client):
        before = client.get("/api/analysis").content
        client.post("/api/selection", json={"predicates": [{
            "predicate": {"kind": "outlier_flag"}, "mode": "intersect"}]})
        after = client.get("/api/analysis").content
        assert before == after

    def test_small_selection_null_report(self, client):
        steps = {"predicates": [{
            "predicate": {"kind": "time_box", "t_lo": -90, "t_hi": 90,
                          "v_lo": -1e9, "v_hi": -1e8},
            "mode": "intersect",
        }]}
        body = client.post("/api/selection", json=steps).json()
        assert body["indices"] == []
        assert body["sensitivity"] is None
        assert body["brackets"] is None

    def test_malformed_predicate_400(self, client):
        bad = {"predicates": [{"predicate": {"kind": "warp"}, "mode": "intersect"}]}
        assert client.post("/api/selection", json=bad).status_code == 400
        assert client.post("/api/selection", content=b"not json").status_code == 400
        missing = {"predicates": [{"mode": "union"}]}
        assert client.post("/api/selection", json=missing).status_code == 400

    def test_unknown_param_400(self, client):
        bad = {"predicates": [{
            "predicate": {"kind": "param_range", "param": "Z9", "lo": 0, "hi": 1},
            "mode": "intersect",
        }]}
        assert client.post("/api/selection", json=bad).status_code == 400

    def test_band_coverage_mismatch_422(self, client):
        bad = {"predicates": [{
            "predicate": {"kind": "band_tail", "side": "upper",
                          "coverage": 0.7, "at": 0},
            "mode": "intersect",
        }]}
        assert client.post("/api/selection", json=bad).status_code == 422

    def test_selection_respects_analysis_config(self, client):
        steps = {"predicates": [{"predicate": {"kind": "outlier_flag"},
                                 "mode": "intersect"}]}
        at95 = client.post("/api/selection", json=steps).json()["indices"]
        at99 = client.post("/api/selection", json=steps,
                           params={"outer": "0.99"}).json()["indices"]
        assert len(at99) <= len(at95)


class TestIndex:
    def test_placeholder_page(self, client):
        response = client.get("/")
        assert response.status_code == 200
        assert "ensemble-lens" in response.text

    def test_static_ui_dir(self, ensemble, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>explorer</body></html>")
        app = create_app(ensemble, ui_dir=tmp_path)
        with TestClient(app) as ui_client:
            assert "explorer" in ui_client.get("/").text
            # api still wins over the static mount
            assert ui_client.get("/api/ensemble").status_code == 200
