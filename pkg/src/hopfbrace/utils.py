import logging
from dataclasses import dataclass
from pathlib import Path

from .errors import FieldError
from .exact_linalg import FieldSpec

VERSION = "1.0.0"
CONFIG_FILE_NAME = "kernel_config.md"
OUTPUT_FORMATS = ("text", "structured")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class Config:
    """Defaults for the command line; flags override every value."""
    field: FieldSpec = FieldSpec("Q", 0)
    window_a: int = 2
    window_b: int = 2
    extended: bool = False
    output: str = "text"
    log_level: str = "WARNING"

    @staticmethod
    def from_file(config_path: Path) -> "Config":
        """Reads ``KEY: value`` lines; values that do not parse keep their defaults."""
        config = Config()
        if not config_path.is_file():
            print(f"Info: Configuration file not found at '{config_path}'. Using defaults.")
            return config

        try:
            with config_path.open("r", encoding="utf-8") as file_handle:
                for line in file_handle:
                    if ":" in line and not line.strip().startswith("<!--"):
                        key, value = map(str.strip, line.split(":", 1))
                        if key == "FIELD":
                            try:
                                config.field = FieldSpec.parse(value)
                            except FieldError:
                                pass
                        elif key in ("WINDOW_A", "WINDOW_B"):
                            try:
                                size = int(value)
                                if size >= 0:
                                    setattr(config, key.lower(), size)
                            except ValueError:
                                pass
                        elif key == "EXTENDED":
                            config.extended = value.lower() == "true"
                        elif key == "OUTPUT":
                            if value in OUTPUT_FORMATS:
                                config.output = value
                        elif key == "LOG_LEVEL":
                            if value.upper() in LOG_LEVELS:
                                config.log_level = value.upper()
        except Exception as error:
            print(f"Warning: Could not parse configuration file. Error: {error}")

        return config


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
