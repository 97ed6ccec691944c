import pandas as pd
import pytest

from specsetlab.bounds.bounds import gamma, shields_bound, thm1_upper
from specsetlab.bounds.curves import COLUMNS, bound_curve, bound_frame, write_bound_curve
from specsetlab.utils.exceptions import InvalidValue


def test_bound_curve_samples():
    samples = bound_curve(1.5, 4.0, 6)
    assert len(samples) == 6
    assert samples[0].R == pytest.approx(1.5)
    assert samples[-1].R == pytest.approx(4.0)
    for s in samples:
        assert s.shields == pytest.approx(shields_bound(s.R))
        assert s.thm1_upper == pytest.approx(thm1_upper(s.R))
        assert s.gamma == pytest.approx(gamma(s.R))
        assert s.gamma1 <= 2.0
        assert s.paulsen >= 3.0


def test_default_curve_has_two_hundred_rows():
    samples = bound_curve()
    assert len(samples) == 200
    assert samples[0].R == pytest.approx(1.01)
    assert samples[-1].R == pytest.approx(10.0)


@pytest.mark.parametrize("kwargs", [{"rmin": 1.0}, {"rmin": 3.0, "rmax": 2.0}, {"steps": 1}])
def test_bound_curve_rejects_bad_ranges(kwargs):
    with pytest.raises(InvalidValue):
        bound_curve(**kwargs)


def test_bound_frame_columns():
    frame = bound_frame(bound_curve(2.0, 3.0, 3))
    assert list(frame.columns) == COLUMNS
    assert frame.shape == (3, 6)


def test_write_bound_curve(tmp_path):
    path = write_bound_curve(
        bound_curve(2.0, 3.0, 4), tmp_path / "out" / "bounds.csv", crossovers={"shields_thm1": 3.15}
    )
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert lines[-1] == "# crossover shields_thm1 3.1500000000"
    frame = pd.read_csv(path, comment="#")
    assert len(frame) == 4
    assert frame["R"].iloc[-1] == pytest.approx(3.0)


def test_write_bound_curve_appends_computed_crossovers(tmp_path):
    path = write_bound_curve(bound_curve(2.0, 3.0, 2), tmp_path / "bounds.csv")
    comments = [line for line in path.read_text().splitlines() if line.startswith("#")]
    names = [line.split()[2] for line in comments]
    assert names == sorted(["paulsen_shields", "paulsen_thm1", "paulsen_three", "shields_thm1"])
