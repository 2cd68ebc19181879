"""
Exception family for numcert
Every error carries a stable code so the CLI and the JSON reports can name it
"""

from typing import Optional


class NumcertError(Exception):
    """Base class for all numcert failures"""

    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_dict(self) -> dict:
        return {"code": self.code, "error": str(self), **self.details}


# goal is false or outside what the provers handle
class NotTrue(NumcertError):
    code = "NotTrue"


class OutOfRange(NumcertError):
    code = "OutOfRange"


class OutOfDomain(NumcertError):
    code = "OutOfDomain"


class ZeroValue(NumcertError):
    code = "ZeroValue"


class Divides(NumcertError):
    code = "Divides"


class IsPrime(NumcertError):
    code = "IsPrime"


class Composite(NumcertError):
    code = "Composite"


class NotPrime(NumcertError):
    code = "NotPrime"


class BadChain(NumcertError):
    code = "BadChain"


class NoCertificate(NumcertError):
    code = "NoCertificate"


# registry
class UnknownRule(NumcertError):
    code = "UnknownRule"


class UnboundMetaVar(NumcertError):
    code = "UnboundMetaVar"


# text and file formats
class ParseError(NumcertError):
    code = "ParseError"

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(f"{message} at position {position}" if position is not None else message, position=position)
        self.position = position


class SchemaError(NumcertError):
    code = "SchemaError"


class CheckError(NumcertError):
    """Raised by CheckResult.raise_for_status for a rejected proof"""

    code = "CheckError"

    def __init__(self, reason: str, path: tuple = (), detail: str = ""):
        where = "/".join(str(i) for i in path) or "root"
        super().__init__(f"{reason} at {where}: {detail}" if detail else f"{reason} at {where}", reason=reason, path=list(path))
        self.reason = reason
        self.path = tuple(path)
