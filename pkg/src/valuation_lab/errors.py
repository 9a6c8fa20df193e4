"""Error type shared by every module.

Each failure carries a short machine-readable ``code`` (``ZERO_POLY``,
``NOT_IRREDUCIBLE`` ...) which the CLI copies into its JSON error object.
"""


class LabError(Exception):
    def __init__(self, code, message=""):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}")

    def to_json(self):
        return {"error": {"code": self.code, "message": self.message}}
