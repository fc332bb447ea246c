"""Exception types.  Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class HamsquareError(Exception):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code
        self.detail = detail


class GraphError(HamsquareError, ValueError):
    pass


class GraphFormatError(GraphError):
    pass


class LayoutError(HamsquareError, ValueError):
    """A layout slot is not an edge of the host graph, or the layout is malformed."""

    def __init__(self, code: str, detail: str = "", slot: tuple[int, int] | None = None):
        super().__init__(code, detail)
        self.slot = slot


class UnsupportedSizeError(HamsquareError, ValueError):
    pass


class BoundError(HamsquareError, ValueError):
    pass


class SearchError(HamsquareError, ValueError):
    pass
