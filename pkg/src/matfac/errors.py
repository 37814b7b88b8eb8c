"""Exception types shared across the package.

Two kinds of failure are kept apart deliberately:

* `MatfacError` (and ValueError etc. from validation) means the caller broke a
  contract — bad input, mismatched shapes, a precondition that does not hold.
* `Refusal` means the input was legitimate but the requested computation is
  outside what the exact methods can soundly decide; the CLI reports these as
  "refused" rather than as failures.
"""

from __future__ import annotations


class MatfacError(Exception):
    """Base class for contract violations raised by this package."""


class Refusal(MatfacError):
    """The computation was declined on soundness grounds (not a caller error)."""


class UndecidableError(Refusal):
    """A question the implemented exact methods cannot settle either way."""
