# noqa: D101, D102, D103
"""Module with helper functions for the whole package."""
import logging
import os
from abc import ABC
from abc import abstractmethod
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Optional

import yaml  # type: ignore
from pydantic import BaseModel
from pydantic import field_validator
from pydantic import PositiveInt
from sympy import GF
from sympy import isprime
from sympy import QQ


class Borg(ABC):
    """Borg API class."""

    def clear(self) -> None:
        """Reset the extra class variables."""
        self._shared_state.clear()

    @property
    @abstractmethod
    def _shared_state(self):
        pass  # pragma: no cover


class Logger(Borg):
    """Singleton to carry package-level settings."""

    _shared_state: Any = {}

    logger: logging.Logger

    def __init__(self, debug: bool = False) -> None:
        """Class constructor."""
        self.__dict__ = self._shared_state

        if len(self._shared_state) == 0:
            self._debug: bool = debug
            self.logger = setup_logger(debug)


def setup_logger(debug: bool) -> logging.Logger:
    """Build and return a logger for the bettisect package."""
    logger = logging.getLogger("bettisect")
    # Purge previous handlers
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    log_format = "%(name)s - %(levelname)s - %(message)s"
    if debug:
        file_handler = logging.FileHandler("bettisect.log", "w")
        formatter = logging.Formatter(log_format)
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)
        logger.setLevel(logging.DEBUG)
    else:
        stream_handler = logging.StreamHandler()
        formatter = logging.Formatter(log_format)
        stream_handler.setFormatter(formatter)
        stream_handler.setLevel(logging.INFO)
        logger.addHandler(stream_handler)
        logger.setLevel(logging.INFO)

    return logger


def get_logger() -> logging.Logger:
    """Access the logger singleton."""
    return Logger().logger


##########
# Errors
##########


class BettisectError(Exception):
    """Base class of all package errors."""


class ContextMismatchError(BettisectError, ValueError):
    """Two objects live in different variable contexts."""


class ResourceCapError(BettisectError, RuntimeError):
    """A configured computation cap was exceeded."""


class NotApplicableError(BettisectError, ValueError):
    """The hypotheses of a closed formula do not hold for the given input."""


def check_type(key: str, value: Any, des_type: Any) -> None:
    """Type if value with name key is of type."""
    if not isinstance(value, des_type):
        raise TypeError(f"Value of {key}={value} should be {des_type}.")


###############################################################################
# Engine configuration in Pydantic
###############################################################################


class Families(Enum):
    """Graph families understood by the CLI and the harness."""

    path = "path"
    """Path x1 - x2 - ... - xn, edge i joins x_i and x_{i+1}."""
    star = "star"
    """Star with center x_n, leaf i joined to the center."""
    cycle = "cycle"
    """Cycle, closing the path with the edge {x_n, x_1}."""


class Suites(Enum):
    """Verification suites."""

    star = "star"
    path = "path"
    colon = "colon"
    splitting = "splitting"
    examples = "examples"
    closure = "closure"
    oracle = "oracle"
    exact = "exact"
    union = "union"


class SkipReasons(Enum):
    """Machine-readable reasons for a prediction or case not being asserted."""

    not_applicable = "not-applicable"
    """The hypotheses of the closed formula do not hold."""
    resource_cap = "resource-cap"
    """The engine hit a configured computation cap."""
    not_integrally_closed = "not-integrally-closed"
    """The edge ideal is not integrally closed."""


class FieldSpec(BaseModel, frozen=True):
    """Coefficient field of the homology computations.

    A characteristic of 0 selects the rationals, anything else GF(p).
    """

    characteristic: int = 32003

    @field_validator("characteristic")
    @classmethod
    def _check_prime(cls, value: int) -> int:
        if value != 0 and not isprime(value):
            raise ValueError(f"Field characteristic {value} is not a prime.")
        return value

    @classmethod
    def from_text(cls, text: str) -> "FieldSpec":
        """Parse ``gf:<p>`` or ``rational``."""
        text = text.strip().lower()
        if text in ("rational", "qq", "q"):
            return cls(characteristic=0)
        if text.startswith("gf:"):
            return cls(characteristic=int(text[3:]))
        raise ValueError(f"Unknown field specification {text}")

    def domain(self) -> Any:
        """Return the sympy domain for this field."""
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic)

    def __str__(self) -> str:
        """__str__ dunder method."""
        if self.characteristic == 0:
            return "rational"
        return f"gf:{self.characteristic}"


class EngineConfig(BaseModel, extra="forbid"):
    """Engine and harness settings, as read from a configuration file."""

    field: FieldSpec = FieldSpec()
    lattice_cap: PositiveInt = 50000
    oracle_cap: PositiveInt = 15
    cache_dir: Optional[Path] = None
    workers: PositiveInt = 1
    closure_oracle_max_vertices: PositiveInt = 6

    @field_validator("field", mode="before")
    @classmethod
    def _parse_field(cls, value: Any) -> Any:
        if isinstance(value, str):
            return FieldSpec.from_text(value)
        return value


def _build_dict_from_yaml(filepath: Path) -> Dict:
    """Read a .yaml file as a dictionary.

    Args:
        filepath: The full file-path to a .yaml file.

    Returns:
        Dict: A dictionary equivalent to the .yaml file.
    """
    with open(filepath) as fp:
        model_dict = yaml.load(fp, Loader=yaml.SafeLoader)  # type: Dict
    return model_dict or {}


def get_engine_config(filepath: Path) -> EngineConfig:
    """Read an engine configuration .yaml file.

    Args:
        filepath: The path to a .yaml file.

    Returns:
        EngineConfig: A Pydantic model
    """
    dictionary = _build_dict_from_yaml(filepath)
    return EngineConfig.model_validate(dictionary)


class EngineSettings(Borg):
    """Helper class resolving the active engine configuration."""

    _shared_state: Any = {}

    def __init__(self) -> None:
        """Class constructor."""
        self.__dict__ = self._shared_state

        if len(self._shared_state) == 0:
            self.CUSTOM_CONFIG_PATH: Optional[Path] = None
            self.overrides: Dict[str, Any] = dict()

    @property
    def config_path(self) -> Optional[Path]:
        """Get the path of the configuration file, if any."""
        return self._get_config_path()

    @property
    def config(self) -> EngineConfig:
        """Return the resolved engine configuration."""
        return self._get_config()

    @property
    def field(self) -> FieldSpec:
        """Return the active coefficient field."""
        return self.config.field

    def _get_config_path(self) -> Optional[Path]:
        config_path = None
        # First check if a specific CUSTOM_CONFIG_PATH has been defined.
        if self.CUSTOM_CONFIG_PATH:
            config_path = Path(self.CUSTOM_CONFIG_PATH).expanduser()
            if not config_path.is_file():
                raise FileNotFoundError(
                    f"Given configuration file {config_path} doesn't exist"
                )

        if not config_path:
            # If not, check if the environmental variable is set
            try:
                config_path = Path(os.environ["BETTISECT_CONFIG"]).expanduser()
                if not config_path.is_file():
                    raise FileNotFoundError(
                        f"BETTISECT_CONFIG points to invalid file {config_path}"
                    )
            except KeyError:
                get_logger().debug("Environment variable for bettisect config not set")

        return config_path

    def _get_config(self) -> EngineConfig:
        config_path = self.config_path
        if config_path is None:
            config = EngineConfig()
        else:
            get_logger().debug(f"Reading engine configuration from {config_path}")
            config = get_engine_config(config_path)

        if config.cache_dir is None and "BETTISECT_CACHE" in os.environ:
            config = config.model_copy(
                update={"cache_dir": Path(os.environ["BETTISECT_CACHE"]).expanduser()}
            )
        if self.overrides:
            config = EngineConfig.model_validate(
                {**config.model_dump(), **self.overrides}
            )
        return config

    def override(self, **kwargs: Any) -> None:
        """Apply explicit settings on top of file and environment values."""
        for key, value in kwargs.items():
            if value is None:
                continue
            get_logger().debug(f"Overriding engine setting {key}={value}")
            self.overrides[key] = value
