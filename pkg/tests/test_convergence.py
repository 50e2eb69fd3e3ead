"""
Tests for ksmagic.analysis.convergence: the closed-form classical-limit table.
"""
import io
import math

import numpy
import pandas as pd
import pytest
import simplejson as json

from ksmagic.analysis.convergence import CSV_COLUMNS, converge_frame, converge_table, crossover_q, \
    first_q_below_gap, render_csv, render_json
from ksmagic.config import CONFIG
from ksmagic.exceptions import BudgetExceeded


class TestTable:

    def test_first_row(self):
        row = converge_table(2, 0.01)[0]
        assert (row.q, row.classical_bound, row.quantum_value) == (2, 4, 6)
        assert abs(row.ratio - 4 / 6) < 1e-15

    def test_six_qubits(self):
        row = converge_table(6, 0.05)[-1]
        assert row.q == 6
        assert row.ratio == pytest.approx(0.8, abs=1e-15)
        assert row.ghz_comparator == pytest.approx(0.9 ** 6, rel=1e-12)
        assert row.asymptote == pytest.approx(1 - 2 / 6)

    def test_monotone(self):
        frame = converge_frame(1000, 0.01)
        assert numpy.all(numpy.diff(frame.ratio) > 0)
        assert numpy.all(frame.ratio < 1)
        assert numpy.all(numpy.diff(frame.gap) < 0)
        assert numpy.all((frame.ghz_comparator > 0) & (frame.ghz_comparator <= 1))

    def test_million_rows(self):
        frame = converge_frame(10 ** 6, 0.01)
        q = frame.q.to_numpy()
        assert len(frame) == 10 ** 6 - 1
        assert numpy.allclose(frame.ratio, (q + 2) / (q + 4), rtol=1e-13, atol=0)

    def test_crossover_flag(self):
        frame = converge_frame(20, 0.1)
        assert list(frame.q[frame.past_crossover]) == list(range(10, 21))

    def test_row_budget(self, monkeypatch):
        monkeypatch.setattr(CONFIG, "MAX_TABLE_ROWS", 99)
        assert len(converge_frame(100, 0.01)) == 99
        with pytest.raises(BudgetExceeded):
            converge_frame(101, 0.01)
        with pytest.raises(ValueError):
            converge_table(10 ** 9, 0.01)

    @pytest.mark.parametrize("arguments", [(1, 0.01), (10, 0.0), (10, 0.5), (10, -0.1), (2.5, 0.1)])
    def test_invalid(self, arguments):
        with pytest.raises(ValueError):
            converge_table(*arguments)


class TestGapAndCrossover:

    def test_gap_below_one_percent(self):
        assert first_q_below_gap(0.01) == 197
        assert 2 / (197 + 4) < 0.01 <= 2 / (196 + 4)

    def test_gap_threshold_above_first_row(self):
        assert first_q_below_gap(0.5) == 2

    @pytest.mark.parametrize("epsilon", [0.001, 0.01, 0.05, 0.1, 0.3])
    def test_crossover(self, epsilon):
        q = crossover_q(epsilon)

        def excess(n):
            return math.log(2 / (n + 4)) - n * math.log1p(-2 * epsilon)

        assert excess(q) > 0
        assert all(excess(n) <= 0 for n in range(2, q))


class TestRendering:

    def test_csv(self):
        text = render_csv(converge_frame(4, 0.1))
        lines = text.split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[3] == "4,6,8,0.75,0.25,0.4096"
        assert text.endswith("\n") and "\r" not in text

    def test_csv_precision(self):
        frame = converge_frame(10 ** 4, 0.01)
        parsed = pd.read_csv(io.StringIO(render_csv(frame)))
        q = parsed.q.to_numpy()
        assert list(parsed.columns) == CSV_COLUMNS
        assert numpy.allclose(parsed.ratio, (q + 2) / (q + 4), rtol=1e-11, atol=0)

    def test_csv_is_reproducible(self):
        assert render_csv(converge_frame(50, 0.02)) == render_csv(converge_frame(50, 0.02))

    def test_json(self):
        document = json.loads(render_json(converge_frame(4, 0.1), 0.1))
        assert document["epsilon"] == 0.1
        assert document["crossover_q"] == crossover_q(0.1)
        assert [row["q"] for row in document["rows"]] == [2, 3, 4]
        assert document["rows"][2]["ratio"] == 0.75
