"""Exception and warning types shared across the package."""


class InputError(ValueError):
    """Invalid argument or malformed input value."""


class ParseError(InputError):
    """Malformed dataset, schema, or rule file."""


class SampleError(InputError):
    """Per-sample reduction failure; carries the sample id and field name."""

    def __init__(self, sample_id, field, message):
        super().__init__(f"sample {sample_id!r}, field {field!r}: {message}")
        self.sample_id = sample_id
        self.field = field
        self.reason = message


class DegenerateDataError(InputError):
    """Structurally valid input the operation cannot work with."""


class SizeLimitError(InputError):
    """Instance exceeds a documented complexity guard."""


class DataQualityWarning(UserWarning):
    """Suspicious but loadable data, e.g. a worst statistic below the mean."""
