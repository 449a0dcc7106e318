from infmax.experiment import ResultRow
from infmax.figures import render_spread_curves


def test_render_creates_png(tmp_path):
    rows = [
        ResultRow("dsv", 1, 3.0, 0.5, 0, 100, 7),
        ResultRow("dsv", 2, 5.0, 0.7, 0, 100, 7),
        ResultRow("celf", 1, 3.5, 0.4, 0, 100, 7),
        ResultRow("celf", 2, 5.5, 0.6, 0, 100, 7),
    ]
    out = tmp_path / "curves.png"
    render_spread_curves(rows, out, title="toy")
    data = out.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 1000
