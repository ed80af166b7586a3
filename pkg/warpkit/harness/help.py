"""Help text loading with include directive support."""

import re
from pathlib import Path

INCLUDE = re.compile(r"\{\{include:\s*([^}]+)\}\}")


def module_dir(file_path: str) -> Path:
    """Get the directory containing a module file.

    Usage:
        @register(doc=read_help(module_dir(__file__) / "help.md"))
    """
    return Path(file_path).parent


def read_help(path: str | Path) -> str:
    """
    Read a help.md file and expand {{include: ./other.md}} directives.

    Includes resolve relative to the including file and may nest.

    Example:
        # Command help
        {{include: ../shared_flags.md}}
    """
    path = Path(path)
    return _expand(path.read_text(), path.parent, (path.resolve(),))


def _expand(text: str, base: Path, stack: tuple[Path, ...]) -> str:
    def replace_include(match: re.Match) -> str:
        include_path = (base / match.group(1).strip()).resolve()
        if include_path in stack:
            raise ValueError(f"Circular include of {include_path}")
        if not include_path.exists():
            raise FileNotFoundError(f"Included help file not found: {include_path}")
        return _expand(include_path.read_text(), include_path.parent, (*stack, include_path)).strip()

    return INCLUDE.sub(replace_include, text)
