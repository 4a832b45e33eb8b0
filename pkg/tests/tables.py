"""Frozen expected outputs for the three-voter worked example.

The two tables below list, for every vector of cast votes (voter 1, voter 2,
voter 3), the payoff triple when the true ballots are (abc, bca, cab).  They
were transcribed by hand and must never be regenerated from the code under
test.  Layout sanity-check: each entry is a function of the winner set alone
({a}->(2,0,1), {b}->(1,2,0), {c}->(0,1,2), three-way tie->(1,1,1) without
tie-breaking and (2,0,1) with abc tie-breaking).
"""

PLURALITY_TABLE = {
    ("a", "a", "a"): (2, 0, 1),
    ("a", "b", "a"): (2, 0, 1),
    ("a", "c", "a"): (2, 0, 1),
    ("b", "a", "a"): (2, 0, 1),
    ("b", "b", "a"): (1, 2, 0),
    ("b", "c", "a"): (1, 1, 1),
    ("c", "a", "a"): (2, 0, 1),
    ("c", "b", "a"): (1, 1, 1),
    ("c", "c", "a"): (0, 1, 2),
    ("a", "a", "b"): (2, 0, 1),
    ("a", "b", "b"): (1, 2, 0),
    ("a", "c", "b"): (1, 1, 1),
    ("b", "a", "b"): (1, 2, 0),
    ("b", "b", "b"): (1, 2, 0),
    ("b", "c", "b"): (1, 2, 0),
    ("c", "a", "b"): (1, 1, 1),
    ("c", "b", "b"): (1, 2, 0),
    ("c", "c", "b"): (0, 1, 2),
    ("a", "a", "c"): (2, 0, 1),
    ("a", "b", "c"): (1, 1, 1),
    ("a", "c", "c"): (0, 1, 2),
    ("b", "a", "c"): (1, 1, 1),
    ("b", "b", "c"): (1, 2, 0),
    ("b", "c", "c"): (0, 1, 2),
    ("c", "a", "c"): (0, 1, 2),
    ("c", "b", "c"): (0, 1, 2),
    ("c", "c", "c"): (0, 1, 2),
}

TIEBREAK_TABLE = {
    ("a", "a", "a"): (2, 0, 1),
    ("a", "b", "a"): (2, 0, 1),
    ("a", "c", "a"): (2, 0, 1),
    ("b", "a", "a"): (2, 0, 1),
    ("b", "b", "a"): (1, 2, 0),
    ("b", "c", "a"): (2, 0, 1),
    ("c", "a", "a"): (2, 0, 1),
    ("c", "b", "a"): (2, 0, 1),
    ("c", "c", "a"): (0, 1, 2),
    ("a", "a", "b"): (2, 0, 1),
    ("a", "b", "b"): (1, 2, 0),
    ("a", "c", "b"): (2, 0, 1),
    ("b", "a", "b"): (1, 2, 0),
    ("b", "b", "b"): (1, 2, 0),
    ("b", "c", "b"): (1, 2, 0),
    ("c", "a", "b"): (2, 0, 1),
    ("c", "b", "b"): (1, 2, 0),
    ("c", "c", "b"): (0, 1, 2),
    ("a", "a", "c"): (2, 0, 1),
    ("a", "b", "c"): (2, 0, 1),
    ("a", "c", "c"): (0, 1, 2),
    ("b", "a", "c"): (2, 0, 1),
    ("b", "b", "c"): (1, 2, 0),
    ("b", "c", "c"): (0, 1, 2),
    ("c", "a", "c"): (0, 1, 2),
    ("c", "b", "c"): (0, 1, 2),
    ("c", "c", "c"): (0, 1, 2),
}
