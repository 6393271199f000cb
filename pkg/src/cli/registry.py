"""Command registry and base handler."""

import argparse
from typing import ClassVar

from src.models.config import ToolkitConfig

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2


class CommandRegistry:
    """Registry for CLI commands."""

    _commands: ClassVar[dict[str, type["CommandHandler"]]] = {}

    @classmethod
    def register(cls, handler: type["CommandHandler"]) -> type["CommandHandler"]:
        """Register a command handler.

        Args:
            handler: The command handler class to register

        Returns:
            The registered handler class (for decorator usage)
        """
        cls._commands[handler.name] = handler
        return handler

    @classmethod
    def get_command(cls, name: str) -> type["CommandHandler"] | None:
        """Get a command handler by name.

        Args:
            name: The command name

        Returns:
            The handler class if found, None otherwise
        """
        return cls._commands.get(name)

    @classmethod
    def names(cls) -> list[str]:
        return sorted(cls._commands)

    @classmethod
    def build_parser(cls, prog: str = "geofilt") -> argparse.ArgumentParser:
        """Create the top-level parser with one subparser per registered command."""
        parser = argparse.ArgumentParser(
            prog=prog, description="Matrix-free geostatistical filtering toolkit"
        )
        subparsers = parser.add_subparsers(dest="command", required=True)
        for name in cls.names():
            handler = cls._commands[name]
            sub = subparsers.add_parser(
                name, help=handler.help, description=handler.help
            )
            handler.configure(sub)
        return parser


class CommandHandler:
    """Base class for CLI command handlers."""

    name: ClassVar[str]
    help: ClassVar[str] = ""

    @classmethod
    def configure(cls, parser: argparse.ArgumentParser) -> None:
        """Add the command's arguments.

        Raises:
            NotImplementedError: If not implemented by subclass
        """
        raise NotImplementedError("Command handlers must implement configure")

    @classmethod
    def run(cls, args: argparse.Namespace, config: ToolkitConfig) -> int:
        """Execute the command.

        Args:
            args: Parsed arguments
            config: Toolkit configuration after environment overrides

        Returns:
            The process exit status

        Raises:
            NotImplementedError: If not implemented by subclass
        """
        raise NotImplementedError("Command handlers must implement run")
