###############################################################################
# tfac (C) tfac contributors 2026
#
# Flat key = value configuration files: one pair per line, '#' starts a
# comment, values may be enclosed in single or double quotes
###############################################################################

from __future__ import annotations

import logging
from pathlib import Path
import re
from typing import ClassVar, Iterable

from tfac.errors import ParameterDomainError

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


class ConfigFile:
    COMMENT_CHAR: ClassVar[str] = "#"
    """Starts a line or trailing comment"""

    QUOTES: ClassVar[str] = "'\""
    """Characters that may enclose a value"""

    RE_KEY_VALUE: ClassVar[re.Pattern[str]] = re.compile(r"\s*=\s*")
    """Separator between a key and its value"""

    ###########################################################################

    @staticmethod
    def load(path: Path, known_keys: Iterable[str] | None = None) -> dict[str, str]:
        """
        Read and parse a configuration file.

        :param path: File to read.
        :type path: `Path`

        :param known_keys: Accepted keys (any key when omitted).
        :type known_keys: `Iterable[str]` | `None`

        :return: Raw values by key, in file order.
        :rtype: `dict[str, str]`

        :raises OSError: when the file cannot be read.
        :raises ParameterDomainError: on an unknown key or a malformed line.
        """

        data = Path(path).read_text(encoding="utf-8")
        logger.debug("Loaded configuration from %s", path)

        return ConfigFile.load_from_str(data, known_keys)

    ###########################################################################

    @staticmethod
    def load_from_str(
        data: str | None, known_keys: Iterable[str] | None = None
    ) -> dict[str, str]:
        """
        Parse key = value pairs from a string buffer. A later pair overrides
        an earlier one with the same key.

        :param data: Text to parse.
        :type data: `str` | `None`

        :param known_keys: Accepted keys (any key when omitted).
        :type known_keys: `Iterable[str]` | `None`

        :return: Raw values by key.
        :rtype: `dict[str, str]`
        """

        result: dict[str, str] = {}

        if data is None:
            return result

        known = None if known_keys is None else set(known_keys)

        for number, line in enumerate(
            data.replace("\r\n", "\n").replace("\r", "\n").split("\n"), start=1
        ):
            line = line.strip()

            # Skip empty and comment lines

            if not line or line.startswith(ConfigFile.COMMENT_CHAR):
                continue

            parts = ConfigFile.RE_KEY_VALUE.split(line, maxsplit=1)

            if len(parts) < 2 or not parts[0]:
                raise ParameterDomainError(
                    f"line {number}", f"expected key = value, got {line!r}"
                )

            key, value = parts

            if known is not None and key not in known:
                raise ParameterDomainError(
                    key, f"unknown key, expected one of: {', '.join(sorted(known))}"
                )

            result[key] = ConfigFile.unquote(value, key)

        return result

    ###########################################################################

    @staticmethod
    def unquote(value: str, key: str = "value") -> str:
        """
        Remove a trailing comment and enclosing quotes. Inside quotes the
        comment character is literal.

        :param value: Raw text after the separator.
        :type value: `str`

        :param key: Key reported on errors.
        :type key: `str`

        :return: Clean value.
        :rtype: `str`

        :raises ParameterDomainError: when a quote is not closed.
        """

        value = value.strip()

        if value and value[0] in ConfigFile.QUOTES:
            end = value.find(value[0], 1)

            if end < 0:
                raise ParameterDomainError(key, f"unterminated quote in {value!r}")

            return value[1:end]

        return value.split(ConfigFile.COMMENT_CHAR, 1)[0].rstrip()

    ###########################################################################

    @staticmethod
    def to_str(pairs: dict[str, object]) -> str:
        """
        :param pairs: Values by key; None values are skipped.
        :type pairs: `dict[str, object]`

        :return: One key = value line per pair.
        :rtype: `str`
        """

        return "".join(
            f"{key} = {value}\n" for key, value in pairs.items() if value is not None
        )


###############################################################################
