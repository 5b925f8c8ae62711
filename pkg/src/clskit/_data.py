"""Access to the TSV tables shipped inside the package."""
from importlib import resources

from .errors import TableFormatError


def data_path(*parts):
    return resources.files("clskit").joinpath("data", *parts)


def read_table(path, tag):
    """Yield ``(line_number, fields)`` for the data rows of a tagged TSV file.

    Line 1 must be ``# <tag>\\t<version>``; other ``#`` lines and blank lines
    are skipped.
    """
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# " + tag):
        raise TableFormatError(f"{path}: expected format tag {tag!r} on line 1")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("#"):
            continue
        yield lineno, line.split("\t")
