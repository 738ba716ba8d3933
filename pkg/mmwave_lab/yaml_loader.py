"""
YAML loading that also reads JSON-style exponent numbers.

YAML 1.1 only resolves a float when it has a dot and a signed exponent, so
`60e9` or `1.5e9` would otherwise load as strings.
"""

import re
from typing import IO, Any, Union

import yaml

EXPONENT_FLOAT = re.compile(r"^[-+]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)[eE][-+]?[0-9]+$")


class DocumentLoader(yaml.SafeLoader):
    """SafeLoader plus exponent floats."""


DocumentLoader.add_implicit_resolver("tag:yaml.org,2002:float", EXPONENT_FLOAT, list("-+0123456789."))


def load_document(stream: Union[str, bytes, IO]) -> Any:
    return yaml.load(stream, Loader=DocumentLoader)
