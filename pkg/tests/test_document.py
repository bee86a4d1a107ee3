"""Tests for structure documents and the bundled corpus."""

from pathlib import Path

import pytest

from poissonbv.core.errors import NonConfluentRulesError, ParseError
from poissonbv.document import InputDocument, bundled_structures, load_structure, load_text, read_source

PLANE = """\
# a test plane
[ring]
generators = x, y

[poisson]
{x,y} = x*y
"""


class TestInputDocument:
    """Tests for sectioned parsing."""

    def test_sections(self) -> None:
        """Entries keep their text and location."""
        doc = InputDocument.parse(PLANE)
        assert doc.generators == ["x", "y"]
        entry = doc.poisson["{x,y}"]
        assert (entry.text, entry.line, entry.column) == ("x*y", 6, 9)
        assert doc.dual_basis is None
        assert doc.volume is None

    def test_unknown_section(self) -> None:
        """Section names are fixed."""
        with pytest.raises(ParseError, match="unknown section") as info:
            InputDocument.parse("[rings]\n")
        assert (info.value.line, info.value.column) == (1, 1)

    def test_entry_outside_section(self) -> None:
        """Every entry belongs to a section."""
        with pytest.raises(ParseError, match="outside") as info:
            InputDocument.parse("\n\nname = x\n")
        assert info.value.line == 3

    def test_missing_equals(self) -> None:
        """Entries are 'key = value'."""
        with pytest.raises(ParseError, match="key = value"):
            InputDocument.parse("[ring]\ngenerators x, y\n")

    def test_unknown_keys(self) -> None:
        """Ring keys and options are fixed."""
        with pytest.raises(ParseError, match="unknown ring key"):
            InputDocument.parse("[ring]\ngens = x\n")
        with pytest.raises(ParseError, match="unknown option"):
            InputDocument.parse("[options]\ncolor = red\n")

    def test_repeated_key(self) -> None:
        """A bracket may be given once."""
        with pytest.raises(ParseError, match="twice") as info:
            InputDocument.parse("[poisson]\n{x,y} = 1\n{x,y} = 2\n")
        assert info.value.line == 3

    def test_assert_confluent(self) -> None:
        """The option takes true or false."""
        assert InputDocument.parse("[options]\nassert_confluent = True\n").assert_confluent
        with pytest.raises(ParseError):
            InputDocument.parse("[options]\nassert_confluent = maybe\n")


class TestLoadText:
    """Tests for building structures from text."""

    def test_plane(self) -> None:
        """Defaults: identity dual basis and the standard volume."""
        loaded = load_text(PLANE, "fallback")
        assert loaded.name == "fallback"
        assert loaded.pres.is_free
        assert loaded.pres.n == 2
        assert str(loaded.poisson.pi) == "x*y*(d x)* ^ (d y)*"

    def test_undeclared_generator_location(self) -> None:
        """Expression errors point into the document."""
        text = "[ring]\ngenerators = x, y\n\n[poisson]\n{x,y} = x + q\n"
        with pytest.raises(ParseError, match="undeclared generator 'q'") as info:
            load_text(text)
        assert (info.value.line, info.value.column) == (5, 13)

    def test_undeclared_bracket_key(self) -> None:
        """Bracket keys name declared generators."""
        with pytest.raises(ParseError, match="undeclared generator 'w'") as info:
            load_text("[ring]\ngenerators = x, y\n[poisson]\n{x,w} = 1\n")
        assert info.value.line == 4

    def test_reversed_bracket_key(self) -> None:
        """{y,x} = 1 means {x, y} = -1."""
        loaded = load_text("[ring]\ngenerators = x, y\n[poisson]\n{y,x} = 1\n")
        assert loaded.poisson.generator_bracket(0, 1) == -1

    def test_missing_generators(self) -> None:
        """[ring] must declare generators."""
        with pytest.raises(ParseError, match="generators"):
            load_text("[poisson]\n")

    def test_smooth_dim(self) -> None:
        """smooth_dim must be an integer in 0..r."""
        with pytest.raises(ParseError, match="integer"):
            load_text("[ring]\ngenerators = x\nsmooth_dim = one\n")
        with pytest.raises(ParseError, match="0..1"):
            load_text("[ring]\ngenerators = x\nsmooth_dim = 2\n")

    def test_dual_basis_row_length(self) -> None:
        """Each dual-basis row has r entries."""
        text = "[ring]\ngenerators = x, y\n[dual_basis]\nx = 1, 0\ny = 0\n"
        with pytest.raises(ParseError, match="needs 2 entries") as info:
            load_text(text)
        assert info.value.line == 5

    def test_relation_error_location(self) -> None:
        """Errors inside a relation are located within its line."""
        text = "[ring]\ngenerators = x, z\nrelation = z^2 -> 1 - w\n"
        with pytest.raises(ParseError) as info:
            load_text(text)
        assert (info.value.line, info.value.column) == (3, 23)

    def test_non_terminating_relation(self) -> None:
        """Rules must terminate."""
        with pytest.raises(NonConfluentRulesError):
            load_text("[ring]\ngenerators = x, y\nrelation = x -> x^2\n")


class TestCorpus:
    """Tests for file lookup and the bundled structures."""

    def test_bundled_names(self) -> None:
        """The bundled corpus ships six structures."""
        assert bundled_structures() == [
            "corrupted_so3.pois",
            "free_symplectic_plane.pois",
            "quadratic_plane.pois",
            "so3_free.pois",
            "sphere_so3.pois",
            "zero_structure.pois",
        ]

    def test_bundled_fallback(self) -> None:
        """Bare names and file names both resolve to the corpus."""
        assert load_structure("so3_free").name == "so3_free"
        assert load_structure("so3_free.pois").pres.r == 3

    def test_disk_file_wins(self, tmp_path: Path) -> None:
        """A file on disk is read before the corpus; its stem names it."""
        path = tmp_path / "my_plane.pois"
        path.write_text(PLANE, encoding="utf-8")
        name, text = read_source(str(path))
        assert (name, text) == ("my_plane", PLANE)
        assert load_structure(str(path)).name == "my_plane"

    def test_missing(self) -> None:
        """Unknown names raise FileNotFoundError."""
        with pytest.raises(FileNotFoundError, match="no such structure"):
            read_source("no_such_structure")

    def test_sphere(self) -> None:
        """The sphere declares n = 2 and its volume data."""
        loaded = load_structure("sphere_so3")
        assert loaded.pres.n == 2
        assert not loaded.pres.is_free
        assert len(loaded.pres.volume_a) == 3
