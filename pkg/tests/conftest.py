from fractions import Fraction

from hypothesis import strategies as st

from chainspace.lengths import LengthVector, is_generic

rationals = st.builds(Fraction, st.integers(1, 30), st.integers(1, 8))


@st.composite
def length_vectors(draw, min_n=3, max_n=9, generic=False, dominated=False):
    entries = draw(st.lists(rationals, min_size=min_n, max_size=max_n))
    if dominated:
        top = max(entries)
        entries = [x for x in entries] + [top + draw(st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(7, 2), 100]))]
        entries = entries[1:] if len(entries) > max_n else entries
    lv = LengthVector(tuple(entries))
    if generic:
        from hypothesis import assume

        assume(is_generic(lv))
    return lv


ACCEPTANCE_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        status, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{status}  criterion {key}: {detail}")
