import pytest
from hypothesis import given, strategies as st

from dorfman import gallery
from dorfman.courant import NonClosedTwist, make_twisted_standard
from dorfman.matched import same_structure, structure_differences
from dorfman.polynomial import Chart
from dorfman.specfile import (ShapeMismatch, SpecError, SpecSyntaxError, UnknownName, load_spec,
                              pair_to_spec, parse_document, parse_spec, structure_to_spec)

MINIMAL = """\
[chart]
coordinates = x, y

[twisted CM]
"""


def test_minimal_spec():
    doc = parse_spec(MINIMAL)
    assert [s.kind for s in doc.sections] == ["chart", "twisted"]
    ws = load_spec(MINIMAL)
    assert same_structure(ws["CM"], make_twisted_standard(Chart(("x", "y"))))


def test_comments_and_blank_lines_are_ignored():
    text = "# header\n\n" + MINIMAL.replace("[twisted CM]", "# a twist\n[twisted CM]   \n\n# done")
    assert parse_spec(text) == parse_spec(MINIMAL)


ASYMMETRIC = """\
[chart]
coordinates = -

[bundle V]
frame = a, b
pairing.a = b: 1
pairing.b = a: 2
"""


def test_asymmetric_pairing_is_located():
    with pytest.raises(ShapeMismatch) as info:
        parse_spec(ASYMMETRIC)
    assert (info.value.line, info.value.column) == (7, 13)
    assert str(info.value).startswith("line 7, column 13:")


def test_incomplete_polynomial_reports_its_column():
    text = "[chart]\ncoordinates = x, y, z\n\n[twisted T]\nH.x.y.z = 2*x +\n"
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text)
    assert info.value.line == 5
    assert info.value.column == len("H.x.y.z = 2*x +") + 1


def test_juxtaposition_is_not_multiplication():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("[chart]\ncoordinates = x, y, z\n\n[twisted T]\nH.x.y.z = 2x + 1\n")
    assert info.value.line == 5 and info.value.column == 12


@pytest.mark.parametrize("text, error, where", [
    ("[chart]\ncoordinates = x\n[matched-pair p]\nfirst = A\nsecond = B\nright = r\n", UnknownName, 4),
    ("[chart]\ncoordinates = x\n[twisted T]\ncolour = red\n", UnknownName, 4),
    ("[chart]\ncoordinates = x\n[spaceship S]\n", UnknownName, 3),
    ("[chart]\ncoordinates = x\n[bundle V]\nframe = a\npairing.a = b: 1\n", UnknownName, 5),
    ("[chart]\ncoordinates = x\n[bundle V]\nframe = a, b\npairing.a.b = b: 1\n", SpecSyntaxError, 5),
    ("[chart]\ncoordinates = x, y\n[twisted T]\nH.x.y.y = 1\n", ShapeMismatch, 4),
    ("coordinates = x\n", SpecSyntaxError, 1),
    ("[chart]\ncoordinates x\n", SpecSyntaxError, 2),
    ("[twisted T]\n", SpecError, 1),
])
def test_errors_carry_a_location(text, error, where):
    with pytest.raises(error) as info:
        parse_spec(text)
    assert info.value.line == where


def test_non_closed_twist_needs_force():
    text = gallery.text("nonclosed-r4")
    with pytest.raises(NonClosedTwist):
        parse_spec(text)
    assert load_spec(text, force=True)["nonclosed"].rank == 8


# -- round trips -------------------------------------------------------------------------------


GALLERY = [n for n in gallery.names() if n != "standard-rN"] + ["standard-r0", "standard-r3"]


@pytest.mark.parametrize("name", GALLERY)
def test_print_and_reparse_gives_the_same_document(name):
    doc = parse_document(gallery.text(name))
    again = parse_document(doc.to_text())
    assert again == doc
    assert again.to_text() == doc.to_text()


@given(st.sampled_from(GALLERY), st.randoms(use_true_random=False))
def test_reparse_of_shuffled_entries_builds_the_same_objects(name, rnd):
    """Entry order inside a section does not matter to the built objects."""
    doc = parse_document(gallery.text(name))
    for sec in doc.sections:
        rnd.shuffle(sec.entries)
    ws1, ws2 = load_spec(gallery.text(name), force=True), load_spec(doc.to_text(), force=True)
    for n in ws1.names_of("bundle", "twisted", "matched-pair", "complex-pair"):
        assert structure_differences(ws1.structure(n), ws2.structure(n)) == []


@pytest.mark.parametrize("name, target", [("twisted-r3", "twisted"), ("so3-point", "so3"),
                                          ("merker-r2", "merker"), ("complex-c2-h21", "c2"),
                                          ("regular-so3", "so3")])
def test_printed_structures_reparse_to_the_same_structure(name, target):
    E = load_spec(gallery.text(name)).structure(target)
    ws = load_spec(structure_to_spec(E, name="E"))
    assert structure_differences(ws["E"], E) == []


@pytest.mark.parametrize("name, target", [("merker-r2", "merker"), ("complex-c2-h21", "c2")])
def test_printed_pairs_reparse_to_the_same_pair(name, target):
    mp = load_spec(gallery.text(name))[target]
    mp2 = load_spec(pair_to_spec(mp, name="pair"))["pair"]
    assert mp2.right.table == mp.right.table and mp2.left.table == mp.left.table
    assert structure_differences(mp2.first, mp.first) == []
    assert structure_differences(mp2.second, mp.second) == []
