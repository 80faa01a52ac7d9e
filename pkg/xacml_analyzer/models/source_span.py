"""
Source span model.

Locates a parsed construct in its input text for error reporting.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class SourceSpan(BaseModel):
    """
    Location of a construct in an input file.

    Lines and columns are 1-based; the end position is inclusive of the
    last character when known.

    Attributes:
        line: Line of the first character
        column: Column of the first character
        end_line: Line of the last character
        end_column: Column after the last character
        source: Name of the input, typically a file path
    """

    line: int = Field(ge=1)
    column: int = Field(ge=1)
    end_line: Optional[int] = Field(default=None, ge=1)
    end_column: Optional[int] = Field(default=None, ge=1)
    source: Optional[str] = None

    model_config = ConfigDict(frozen=True)

    def with_source(self, source: Optional[str]) -> "SourceSpan":
        """Return a copy of this span attributed to the given input name."""
        return self.model_copy(update={"source": source})

    def __str__(self) -> str:
        prefix = f"{self.source}:" if self.source else ""
        return f"{prefix}{self.line}:{self.column}"
