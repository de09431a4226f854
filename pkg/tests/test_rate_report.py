import math

import pytest

from tests.conftest import rate_report_mod

RateReport = rate_report_mod.RateReport


class TestRateReport:
    def test_orders(self):
        report = RateReport("q", (8, 16, 32), (1.0, 0.25, 0.0625), expected=2.0)

        assert report.orders == pytest.approx((2.0, 2.0))
        assert report.final_order == pytest.approx(2.0)
        assert report.extras == {}

    def test_undefined_orders(self):
        report = RateReport("q", (8, 16, 32), (1.0, 0.0, math.inf))

        assert report.orders == (None, None)
        assert report.final_order is None

    def test_single_entry(self):
        assert RateReport("q", (8,), (1.0,)).final_order is None

    def test_order(self):
        assert RateReport.order(1.0, 0.5, 10, 20) == pytest.approx(1.0)
        assert RateReport.order(1.0, 0.5, 10, 10) is None
