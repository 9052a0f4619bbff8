import json

import numpy as np
import pytest

from histosom import benchmark_spec, generate, run_pipeline
from histosom.dataio import (
    InputError,
    dataset_from_doc,
    dataset_to_doc,
    load_assignments,
    load_dataset,
    load_map,
    load_samples_csv,
    save_assignments,
    save_dataset,
    save_map,
)


@pytest.fixture(scope="module")
def small_dataset():
    return generate(benchmark_spec(1, seed=2, n_per_cluster=5,
                                   samples_per_histogram=80, bins=4))


class TestDatasetJson:
    def test_round_trip_bytes(self, tmp_path, small_dataset):
        p1 = tmp_path / "a.json"
        p2 = tmp_path / "b.json"
        save_dataset(p1, small_dataset.observations, labels=small_dataset.labels, bins=4)
        obs, labels, ids = load_dataset(p1)
        save_dataset(p2, obs, labels=labels, ids=ids, bins=4)
        assert p1.read_bytes() == p2.read_bytes()

    def test_round_trip_values(self, tmp_path, small_dataset):
        path = tmp_path / "d.json"
        save_dataset(path, small_dataset.observations, labels=small_dataset.labels)
        obs, labels, ids = load_dataset(path)
        assert list(obs) == list(small_dataset.observations)
        assert labels == list(small_dataset.labels)
        assert ids == list(range(small_dataset.n))

    def test_labels_optional(self, tmp_path, small_dataset):
        path = tmp_path / "d.json"
        save_dataset(path, small_dataset.observations)
        _obs, labels, _ids = load_dataset(path)
        assert labels is None

    def test_renormalizes_near_one(self):
        doc = {
            "dimension": 1,
            "observations": [
                {"id": 0, "variables": [[
                    {"lower": 0.0, "upper": 1.0, "weight": 0.5000001},
                    {"lower": 1.0, "upper": 2.0, "weight": 0.5},
                ]]}
            ],
        }
        obs, _, _ = dataset_from_doc(doc)
        assert obs[0][0].weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_weight_sum(self):
        doc = {
            "dimension": 1,
            "observations": [
                {"id": 0, "variables": [[
                    {"lower": 0.0, "upper": 1.0, "weight": 0.7},
                    {"lower": 1.0, "upper": 2.0, "weight": 0.5},
                ]]}
            ],
        }
        with pytest.raises(InputError, match=r"observations\[0\].variables\[0\]"):
            dataset_from_doc(doc)

    def test_rejects_dimension_mismatch(self):
        doc = {
            "dimension": 2,
            "observations": [
                {"id": 0, "variables": [[{"lower": 0, "upper": 1, "weight": 1.0}]]}
            ],
        }
        with pytest.raises(InputError, match="expected 2"):
            dataset_from_doc(doc)

    def test_rejects_missing_field(self):
        doc = {
            "dimension": 1,
            "observations": [
                {"id": 0, "variables": [[{"lower": 0.0, "weight": 1.0}]]}
            ],
        }
        with pytest.raises(InputError, match="bin 0"):
            dataset_from_doc(doc)

    def test_json_error_names_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n "observations": [,]\n}\n')
        with pytest.raises(InputError, match="line 2"):
            load_dataset(path)


class TestSamplesCsv:
    def test_groups_and_bins(self, tmp_path):
        path = tmp_path / "raw.csv"
        rows = ["id,variable,value"]
        rng = np.random.default_rng(0)
        for oid in ("a", "b"):
            for vid in ("t", "u"):
                for x in rng.normal(0, 1, size=40):
                    rows.append(f"{oid},{vid},{x}")
        path.write_text("\n".join(rows) + "\n")
        ids, obs = load_samples_csv(path, bins=5)
        assert ids == ["a", "b"]
        assert all(o.dimension == 2 for o in obs)
        assert all(h.nbins == 5 for o in obs for h in o)

    def test_missing_variable(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("id,variable,value\n1,x,0.5\n2,x,0.1\n2,y,0.2\n")
        with pytest.raises(InputError, match="lacks variable"):
            load_samples_csv(path)

    def test_bad_value_names_line(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("id,variable,value\n1,x,0.5\n1,x,oops\n")
        with pytest.raises(InputError, match="line 3"):
            load_samples_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("id,variable,value\n")
        with pytest.raises(InputError, match="no sample rows"):
            load_samples_csv(path)


class TestAssignments:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "assign.csv"
        save_assignments(path, ["a", "b"], [3, 4], [0, 1])
        ids, bmus, clusters = load_assignments(path)
        assert (ids, bmus, clusters) == (["a", "b"], [3, 4], [0, 1])
        assert path.read_text().splitlines()[0] == "id,bmu,cluster"

    def test_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "assign.csv"
        path.write_text("foo,bar,baz\n1,2,3\n")
        with pytest.raises(InputError, match="header"):
            load_assignments(path)


class TestMapJson:
    def test_save_and_load(self, tmp_path, small_dataset):
        res = run_pipeline(list(small_dataset.observations), seed=0)
        path = tmp_path / "map.json"
        ids = list(range(small_dataset.n))
        save_map(path, res.enriched, res.clusters, ids)
        doc = load_map(path)
        m = res.som.size
        assert doc["rows"] * doc["cols"] == m
        assert len(doc["densities"]) == m
        assert len(doc["prototypes"]) == m
        assert doc["n_clusters"] == res.clusters.n_clusters
        assert len(doc["assignments"]) == small_dataset.n
        # sparse connectivity triplets reproduce the matrix
        conn = np.zeros((m, m), dtype=np.int64)
        for i, j, v in doc["connectivity"]:
            conn[i, j] = conn[j, i] = v
        assert np.array_equal(conn, res.enriched.connectivity)

    def test_load_rejects_inconsistent_grid(self, tmp_path):
        path = tmp_path / "map.json"
        path.write_text(json.dumps({
            "rows": 2, "cols": 2, "neuron_label": [0, 0, 0, 0],
            "prototypes": [[[{"lower": 0, "upper": 1, "weight": 1.0}]]],
        }))
        with pytest.raises(InputError, match="prototype count"):
            load_map(path)
