"""Tests for the core data model."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossclust import (
    Bicluster,
    CapExceededError,
    DataMatrix,
    Partition,
    ValidationError,
    enumerate_partitions,
    load_matrix_csv,
    submatrix,
    worst_case_matrix,
)
from crossclust.model import canonical_labels

from oracles import (
    partitions_by_block_recursion,
    partitions_by_label_strings,
    stirling2,
)

BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877, 8: 4140}


class TestDataMatrix:
    def test_binary_autodetect(self):
        assert DataMatrix([[0, 1], [1, 0]]).is_binary
        assert not DataMatrix([[0.5, 1.0]]).is_binary

    def test_binary_override_down(self):
        x = DataMatrix([[0, 1], [1, 0]], is_binary=False)
        assert not x.is_binary

    def test_binary_override_up_rejected(self):
        with pytest.raises(ValidationError):
            DataMatrix([[0.5, 1.0]], is_binary=True)

    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            DataMatrix([[1.0, float("nan")]])
        with pytest.raises(ValidationError):
            DataMatrix([[float("inf")]])

    def test_rejects_empty_and_1d(self):
        with pytest.raises(ValidationError):
            DataMatrix([[]])
        with pytest.raises(ValidationError):
            DataMatrix([1.0, 2.0])

    def test_values_are_readonly(self):
        x = DataMatrix([[1.0, 2.0]])
        with pytest.raises(ValueError):
            x.values[0, 0] = 3.0

    def test_transpose(self):
        x = DataMatrix([[1, 2, 3], [4, 5, 6]])
        assert x.transpose().shape == (3, 2)
        assert x.transpose().values[2, 0] == 3.0


class TestCsvLoader:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("0,1,0\n1,0,1\n")
        x = load_matrix_csv(path)
        assert x.shape == (2, 3)
        assert x.is_binary

    def test_real_values(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("0.25,1.5\n-2,0\n")
        x = load_matrix_csv(path)
        assert not x.is_binary
        assert x.values[1, 0] == -2.0

    def test_ragged_row_reports_line(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("0,1\n1,0,1\n")
        with pytest.raises(ValidationError, match="line 2"):
            load_matrix_csv(path)

    def test_non_numeric_reports_line(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("0,1\nx,0\n")
        with pytest.raises(ValidationError, match="line 2"):
            load_matrix_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("")
        with pytest.raises(ValidationError):
            load_matrix_csv(path)

    def test_binary_override(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("0,1\n1,0\n")
        assert not load_matrix_csv(path, binary=False).is_binary


class TestPartition:
    def test_valid(self):
        p = Partition((0, 0, 1, 1), 2)
        assert p.n_items == 4
        assert p.n_clusters == 2
        assert p.clusters == ((0, 1), (2, 3))
        assert p.one_based_clusters() == ((1, 2), (3, 4))

    def test_rejects_non_canonical(self):
        with pytest.raises(ValidationError):
            Partition((1, 0), 2)
        with pytest.raises(ValidationError):
            Partition((0, 2), 3)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            Partition((0, 1), 1)
        with pytest.raises(ValidationError):
            Partition((), 1)

    def test_from_labels_canonicalizes(self):
        p = Partition.from_labels([5, 5, 2, 5])
        assert p.assignment == (0, 0, 1, 0)

    def test_equality_ignores_k(self):
        assert Partition((0, 1), 2) == Partition((0, 1), 5)
        assert hash(Partition((0, 1), 2)) == hash(Partition((0, 1), 5))
        assert Partition((0, 0), 1) != Partition((0, 1), 2)

    @given(st.lists(st.integers(0, 6), min_size=1, max_size=10))
    def test_canonicalization_idempotent(self, labels):
        once = canonical_labels(labels)
        assert canonical_labels(once) == once

    @given(st.lists(st.integers(0, 6), min_size=1, max_size=10))
    def test_from_labels_preserves_grouping(self, labels):
        p = Partition.from_labels(labels)
        # same items grouped together before and after relabeling
        for i in range(len(labels)):
            for j in range(len(labels)):
                assert (labels[i] == labels[j]) == (
                    p.assignment[i] == p.assignment[j]
                )


class TestEnumeratePartitions:
    def test_single_cluster_forced(self):
        parts = list(enumerate_partitions(3, 1))
        assert [p.assignment for p in parts] == [(0, 0, 0)]

    def test_bell_3(self):
        assert len(list(enumerate_partitions(3, 3))) == 5

    def test_t4_k2(self):
        # S(4,1) + S(4,2) = 1 + 7
        assert len(list(enumerate_partitions(4, 2))) == 8

    @pytest.mark.parametrize("t", [1, 2, 3, 4, 5])
    def test_matches_label_string_bruteforce(self, t):
        for max_k in range(1, t + 1):
            ours = {p.assignment for p in enumerate_partitions(t, max_k)}
            assert ours == partitions_by_label_strings(t, max_k)

    @pytest.mark.parametrize("t", [1, 2, 3, 4, 5, 6, 7, 8])
    def test_full_enumeration_matches_block_recursion(self, t):
        ours = [p.assignment for p in enumerate_partitions(t, t)]
        assert len(ours) == len(set(ours)) == BELL[t]
        assert set(ours) == partitions_by_block_recursion(t)

    @pytest.mark.parametrize("t,max_k", [(5, 2), (6, 3), (7, 2), (8, 4)])
    def test_counts_match_stirling_sums(self, t, max_k):
        expected = sum(stirling2(t, j) for j in range(1, max_k + 1))
        assert sum(1 for _ in enumerate_partitions(t, max_k)) == expected

    def test_lexicographic_order(self):
        parts = [p.assignment for p in enumerate_partitions(4, 4)]
        assert parts == sorted(parts)

    def test_cap_exceeded(self):
        with pytest.raises(CapExceededError):
            enumerate_partitions(15, 2)

    def test_invalid_bounds(self):
        with pytest.raises(ValidationError):
            enumerate_partitions(3, 0)
        with pytest.raises(ValidationError):
            enumerate_partitions(3, 4)


class TestBiclustering:
    def test_grid_shape_validated(self):
        import numpy as np
        from crossclust import Biclustering

        rows = Partition((0, 0, 1), 2)
        cols = Partition((0, 1), 2)
        good = Biclustering(rows, cols, np.zeros((2, 2)))
        assert good.total_cost == 0.0
        with pytest.raises(ValidationError):
            Biclustering(rows, cols, np.zeros((2, 3)))
        with pytest.raises(ValidationError):
            Biclustering(rows, cols, np.full((2, 2), -1.0))


class TestBicluster:
    def test_identity_view(self):
        x = DataMatrix([[1, 2], [3, 4]])
        y = submatrix(x, [0, 1], [0, 1])
        assert np.array_equal(y.values, x.values)

    def test_single_entry(self):
        x = DataMatrix([[1, 2], [3, 4]])
        y = submatrix(x, [1], [0])
        assert y.values.tolist() == [[3.0]]
        assert (y.n, y.m) == (1, 1)

    def test_worst_case_column_slice(self):
        # rows 1 and 3 of the q=1 family start with entries 0 and 1
        y = submatrix(worst_case_matrix(1), [1, 3], [0])
        assert y.values.ravel().tolist() == [0.0, 1.0]

    def test_whole(self):
        x = DataMatrix([[1, 2], [3, 4]])
        y = Bicluster.whole(x)
        assert (y.n, y.m) == (2, 2)

    def test_rejects_bad_subsets(self):
        x = DataMatrix([[1, 2], [3, 4]])
        with pytest.raises(ValidationError):
            submatrix(x, [], [0])
        with pytest.raises(ValidationError):
            submatrix(x, [1, 0], [0])
        with pytest.raises(ValidationError):
            submatrix(x, [0, 0], [0])
        with pytest.raises(ValidationError):
            submatrix(x, [0, 2], [0])
