"""Smoke test for the Python bindings.

Uses an installed `saxl` module if there is one, otherwise the library
built by `cargo build -p saxl-py --release --features extension-module`.
"""

import json
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        import saxl
        return saxl
    except ImportError:
        pass
    for name in ("libsaxl.so", "libsaxl.dylib", "saxl.dll"):
        built = os.path.join(ROOT, "target", "release", name)
        if os.path.exists(built):
            tmp = tempfile.mkdtemp()
            ext = ".pyd" if name.endswith(".dll") else ".so"
            shutil.copy(built, os.path.join(tmp, "saxl" + ext))
            sys.path.insert(0, tmp)
            import saxl
            return saxl
    sys.exit("saxl module not found; build it with "
             "cargo build -p saxl-py --release --features extension-module")


def main():
    os.environ.setdefault("SAXL_FIXTURES", os.path.join(ROOT, "fixtures"))
    saxl = load()

    assert saxl.describe("pgl2:7:pl") == (8, "336")
    b, witness = saxl.base_size("sym:5")
    assert b == 4 and len(witness) == 4

    edges = saxl.saxl_edges("sym:4")
    assert len(edges) == 6

    assert saxl.q_exact("sym:3", 2) == "1/3"

    report = json.loads(saxl.report_json("pgl2:7:pl"))
    assert report["schema"] == 1
    assert report["b"] == 3 and report["complete"] is True and report["reg"] == "1"

    skipped = json.loads(saxl.report_json("cyc:6"))
    assert skipped["complete"] == "skipped(base size below 2)"

    rows = saxl.reproduce_table("diag-small")
    assert rows and all(r[3] for r in rows)

    try:
        saxl.describe("sym:x")
    except ValueError as e:
        assert "position 4" in str(e)
    else:
        raise AssertionError("bad recipe accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
