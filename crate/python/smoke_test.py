"""Smoke test for the rnass Python extension.

Build and install it first:

    pip install maturin
    maturin develop -m crates/python/Cargo.toml   # or: maturin build + pip install
    python python/smoke_test.py
"""

import rnass


def main():
    assert rnass.count(9, 3) == 50
    assert rnass.count(12, 5) == 21
    assert rnass.narayana(6, 4) == rnass.count(9, 3)

    table = rnass.CountTable(8, 3)
    words = table.enumerate(8, 3)
    assert len(words) == 10
    assert [table.rank(w) for w in words] == list(range(10))
    assert str(words[9]) == "(*)((*))"
    assert words[9].to_variant() == "(1,(2,5,(),(1,(0,0,(1,(0,0,(),())),()))))"
    assert rnass.MotzkinWord.from_variant(words[9].to_variant(), 8) == words[9]

    assert rnass.rank(".((.))") == 0
    assert str(rnass.unrank(6, 2, 5)) == "(*)(*)"

    big = rnass.CountTable(1000, 300)
    top = big.count(1000, 300) - 1
    word = big.unrank(top, 1000, 300)
    assert (word.n, word.m) == (1000, 300)
    assert big.rank(word) == top

    samples = table.sample(8, 3, 1000, seed=7)
    assert {str(w) for w in samples} <= {str(w) for w in words}

    try:
        rnass.MotzkinWord("()")
    except ValueError as err:
        assert "hairpin" in str(err)
    else:
        raise AssertionError("empty hairpin accepted")

    assert rnass.verify_bijection(10, 4)["passed"]
    print("rnass smoke test passed")


if __name__ == "__main__":
    main()
