"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import pqbrauer


def coeff(c):
    return {int(k): v for k, v in c.items()}


def main():
    assert pqbrauer.hom_dim(3, 1) == 3
    assert pqbrauer.hom_dim(2, 1) == 0
    assert pqbrauer.hom_dim(4, 4) == 105

    p = pqbrauer.mult(3, "E1 E2 E1", "")
    assert [t["word"] for t in p["m_basis"]] == ["E1"]
    assert coeff(p["m_basis"][0]["coeff"]) == {0: -1}

    assert pqbrauer.normal_form("U 1 ; A 1") == []
    assert len(pqbrauer.normal_form("X- 1", source=2)) == 2

    m = pqbrauer.module(2, "[2]", "T1")
    assert m["entries"] == [[0, 0, {"1": 1}]]

    g = pqbrauer.gram(2, "[]")
    assert g["radical_rank"] == 1

    b = pqbrauer.blocks(1)
    assert b["semisimplicity"]["semisimple"]

    checks = pqbrauer.verify(2, n=2, only="combin")["checks"]
    assert checks and all(c["status"] == "pass" for c in checks)

    code, _, err = pqbrauer.cli(["dims", "x", "1"])
    assert code == 2 and err
    try:
        pqbrauer.gram(2, "[5]")
    except ValueError:
        pass
    else:
        raise AssertionError("invalid label accepted")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
