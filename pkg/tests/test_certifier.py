import csv
import io
import json

import pytest

from riley.certifier import (
    BELOW_THRESHOLD,
    CERTIFIED,
    CSV_FIELDS,
    NOT_FOUND,
    OrderabilityVerdict,
    certify,
    certify_many,
    monotonicity_report,
    summarize,
    sweep,
    theorem_triples,
    thm_lower_bound,
    verdicts_to_csv,
    verdicts_to_json,
)
from riley.root_finder import ScanConfig, check_certificate

# (n, m) -> smallest r with a claimed root, transcribed clause by clause
TABLE = {
    (3, 1): 3, (3, -5): 3, (7, 2): 3, (5, -3): 3, (-4, 1): 3, (-6, -2): 3, (-8, 8): 3,
    (2, 1): 4, (2, -7): 4, (-3, 3): 4, (-3, -1): 4,
    (1, 1): 5, (1, 2): 5, (-2, -1): 5,
    (1, 3): 6, (1, 8): 6, (-2, -2): 6, (-2, -6): 6,
    (1, -4): 7, (1, -8): 7, (-2, 6): 7, (-2, 9): 7,
    (1, -2): 8, (1, -3): 8,
    (1, -1): 9,
    (-2, 1): None, (-2, 2): None, (-2, 5): None, (-1, 1): None, (-1, -4): None,
}


class TestLowerBound:
    def test_table_size(self):
        assert len(TABLE) == 30

    @pytest.mark.parametrize("pair, bound", sorted(TABLE.items()))
    def test_table(self, pair, bound):
        assert thm_lower_bound(pair) == bound

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            thm_lower_bound((0, 1))


class TestCertify:
    @pytest.mark.parametrize("n, m, r", [(3, 1, 3), (1, -1, 9), (-2, 6, 7)])
    def test_certified(self, n, m, r):
        v = certify((n, m), r)
        assert v.status == CERTIFIED
        assert v.certificate is not None and v.certificate.y_star > 2
        assert check_certificate(v.certificate) == []
        assert v.claimed and not v.mismatch

    def test_not_found(self):
        v = certify((-2, 3), 15)
        assert v.status == NOT_FOUND
        assert v.certificate is None
        assert v.r_min_claimed is None and not v.claimed

    def test_below_threshold(self):
        v = certify((1, -1), 5)
        assert v.r_min_claimed == 9
        assert v.status == BELOW_THRESHOLD
        assert v.certificate is None

    def test_root_below_bound_still_certified(self, monkeypatch):
        # no real instance turns up at desk scale, so stub the scan
        import riley.certifier as mod

        cert = certify((1, 1), 5).certificate
        monkeypatch.setattr(mod, "scan_roots", lambda *a, **k: [cert])
        v = mod.certify((1, -1), 4)
        assert v.status == CERTIFIED and not v.claimed
        assert v.certificate is cert

    def test_no_roots_below_bound_at_desk_scale(self):
        for p in [(1, -1), (1, -2), (2, 1), (-3, 2), (-2, -1)]:
            for r in range(3, thm_lower_bound(p)):
                assert certify(p, r).status == BELOW_THRESHOLD

    def test_upper_bound_failure_embedded(self):
        v = certify((1, 1), 5, ScanConfig(y_max_cap=5))
        assert v.status == NOT_FOUND
        assert v.error and "stabilise" in v.error
        assert v.mismatch

    def test_rejects_small_r(self):
        with pytest.raises(ValueError):
            certify((1, 1), 1)


class TestSweep:
    def test_empty_r_range(self):
        assert sweep([1, 2], [1], []) == []

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sweep([0, 1], [1], [3])
        with pytest.raises(ValueError):
            sweep([1], [-1, 0], [3])

    def test_ordering_and_counts(self):
        out = sweep([2, -3], [1, -1], [4, 3])
        assert [(v.n, v.m, v.r) for v in out] == sorted((v.n, v.m, v.r) for v in out)
        assert len(out) == 8
        counts = summarize(out)
        assert counts["total"] == 8
        assert counts[CERTIFIED] + counts[NOT_FOUND] + counts[BELOW_THRESHOLD] == 8
        assert counts["mismatches"] == 0

    def test_remark_group_small_m(self):
        out = sweep([-2], [1, 2, 3, 4], range(3, 9))
        assert {v.status for v in out} == {NOT_FOUND}

    def test_parallel_matches_serial(self):
        triples = [(1, 1, 5), (-2, 1, 10), (3, -2, 3), (1, -1, 6)]
        a = certify_many(triples, workers=1)
        b = certify_many(triples, workers=2)
        assert [v.to_dict() for v in a] == [v.to_dict() for v in b]

    def test_theorem_triples(self):
        triples = theorem_triples()
        assert len(triples) == len(set(triples))
        for n, m, r in triples:
            bound = thm_lower_bound((n, m))
            assert bound <= r <= bound + 6
        assert (1, -1, 15) in triples and (-2, 5, 8) not in triples

    def test_monotonicity_report(self):
        mk = lambda r, s: OrderabilityVerdict(3, 1, r, 3, s)
        assert monotonicity_report([mk(3, CERTIFIED), mk(4, NOT_FOUND)]) == [(3, 1, 3)]
        assert monotonicity_report([mk(3, CERTIFIED), mk(4, CERTIFIED)]) == []


class TestOutput:
    def _verdicts(self):
        return [certify((1, 1), 5), certify((-2, 2), 6)]

    def test_json(self):
        data = json.loads(verdicts_to_json(self._verdicts()))
        assert [d["status"] for d in data] == [CERTIFIED, NOT_FOUND]
        assert data[0]["certificate"]["y_star"] > 2
        assert data[1]["certificate"] is None

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(verdicts_to_csv(self._verdicts()))))
        assert rows[0] == CSV_FIELDS
        assert rows[1][:5] == ["1", "1", "5", CERTIFIED, "5"]
        assert float(rows[1][5]) > 2
        assert rows[2][3:] == [NOT_FOUND, "", "", ""]

    def test_status_certificate_invariant(self):
        for v in self._verdicts():
            assert (v.status == CERTIFIED) == (v.certificate is not None)
