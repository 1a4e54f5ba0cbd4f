"""Black-box input generation driven only by a parser's failure feedback."""

from .explorer import Explorer, ExplorerConfig, generate
from .feedback import (COMPLETE, INCOMPLETE, INCORRECT, FunctionValidator,
                       SubprocessValidator, Verdict)
from .trie import TokenTrie

__version__ = "0.1.0"

__all__ = [
    "COMPLETE", "INCOMPLETE", "INCORRECT", "Explorer", "ExplorerConfig",
    "FunctionValidator", "SubprocessValidator", "TokenTrie", "Verdict", "generate",
]
