import json
import logging
import math
import os
import tempfile

from geometry.quadgeom import Quadrilateral, make_quadrilateral
from utils.exceptions import MalformedInputError, OutputWriteError

logger = logging.getLogger(__name__)


def _parse_vertices(raw):
    """Validate a list of four [x, y] pairs of finite numbers."""
    if not isinstance(raw, list) or len(raw) != 4:
        raise MalformedInputError(f"'vertices' must be a list of 4 coordinate pairs, got {raw!r}")
    vertices = []
    for entry in raw:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise MalformedInputError(f"Each vertex must be an [x, y] pair, got {entry!r}")
        if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in entry):
            raise MalformedInputError(f"Vertex coordinates must be numbers, got {entry!r}")
        x, y = float(entry[0]), float(entry[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise MalformedInputError(f"Vertex coordinates must be finite, got {entry!r}")
        vertices.append((x, y))
    return vertices


def parse_quad_document(text):
    """Parse a {"vertices": [[x, y] x 4]} document into a canonically labeled quadrilateral."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Quadrilateral document is not valid JSON: {e}") from e
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise MalformedInputError("Quadrilateral document must be an object with a 'vertices' key")
    return make_quadrilateral(_parse_vertices(doc["vertices"]))


def read_quad_document(path) -> Quadrilateral:
    logger.debug(f"Reading quadrilateral document: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise MalformedInputError(f"Cannot read quadrilateral document {path}: {e}") from e
    return parse_quad_document(text)


def quad_from_numbers(numbers) -> Quadrilateral:
    """Eight numbers x1 y1 ... x4 y4 from the command line, in any vertex order."""
    if len(numbers) != 8:
        raise MalformedInputError(f"Expected 8 numbers (4 vertices), got {len(numbers)}")
    try:
        values = [float(n) for n in numbers]
    except ValueError as e:
        raise MalformedInputError(f"Vertex coordinates must be numbers: {e}") from e
    return make_quadrilateral(_parse_vertices([values[i:i + 2] for i in range(0, 8, 2)]))


def _umask_mode():
    """0o666 masked by the process umask, the mode open() would give a new file."""
    umask = os.umask(0)
    os.umask(umask)
    return 0o666 & ~umask


def write_atomic(path, data: str):
    """Write text to path through a temporary file in the same directory and a rename."""
    target = os.path.abspath(path)
    directory = os.path.dirname(target)
    logger.debug(f"Writing {len(data)} characters to {target}")
    tmp_path = None
    try:
        with tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=directory, delete=False,
                                         prefix=".inellipse-", suffix=".tmp") as tmp:
            tmp_path = tmp.name
            tmp.write(data)
        os.chmod(tmp_path, _umask_mode())
        os.replace(tmp_path, target)
    except OSError as e:
        if tmp_path is not None and os.path.exists(tmp_path):
            os.remove(tmp_path)
        logger.error(f"Error writing {target}: {str(e)}")
        raise OutputWriteError(f"Cannot write {target}: {e}") from e
    return target
