"""
Dataclass-driven argparse configuration.

A subcommand declares its flags as ArgField entries on an @argclass-decorated dataclass that extends
ArgsDataClass. The class builds its own subparser from the field metadata and is rebuilt, typed, from the
parsed namespace.
"""

from __future__ import annotations

import argparse
import inspect
import os
import typing
from dataclasses import MISSING, Field, dataclass, fields


class ArgField(Field):
    """
    A dataclasses.Field carrying the metadata of one command-line flag.

    Fields sharing a `group` name are placed in one mutually exclusive group. When `env_var` is set and the
    variable is present in the environment, its value (run through type_parser) replaces the default, so an
    explicit flag still wins.

    Args:
        cmd_name (str | list[str]): flag name or names
        help (str): help text
        type_parser (typing.Callable | None, optional): converts and validates the raw string. Defaults to None.
        metavar (str | None, optional): name shown in usage messages. Defaults to None.
        nargs (str | None, optional): number of values consumed. Defaults to None.
        action (str | None, optional): argparse action. "store_true" defaults to False, "count" to 0.
        required (bool, optional): the flag must be given. Defaults to False.
        choices (list[str | int] | None, optional): allowed values. Defaults to None.
        group (str | None, optional): mutually exclusive group name. Defaults to None.
        env_var (str | None, optional): environment variable overriding the default. Defaults to None.
        default (typing.Any, optional): value used when the flag is absent. Defaults to MISSING.
    """

    def __init__(
        self,
        cmd_name: str | list[str],
        help: str,
        type_parser: typing.Callable | None = None,
        metavar: str | None = None,
        nargs: str | None = None,
        action: str | None = None,
        required: bool = False,
        choices: list[str | int] | None = None,
        group: str | None = None,
        env_var: str | None = None,
        default=MISSING,
        default_factory=MISSING,
        init=True,
        repr=True,
        hash=None,
        compare=True,
        kw_only=MISSING,
    ):
        metadata = ArgField.FieldAdditionalMetaData(
            cmd_name=cmd_name,
            type_parser=type_parser,
            metavar=metavar,
            nargs=nargs,
            help=help,
            action=action,
            required=required,
            choices=choices,
            group=group,
            env_var=env_var,
        )
        if action == "store_true":
            default = False
        elif action == "count" and default is MISSING:
            default = 0

        field_args = [default, default_factory, init, repr, hash, compare, vars(metadata), kw_only]
        # Field grew a trailing `doc` slot in 3.14
        if "doc" in Field.__slots__:
            field_args.append(None)
        super().__init__(*field_args)

    @dataclass
    class FieldAdditionalMetaData:
        cmd_name: str | list[str]
        type_parser: typing.Any | None = None
        metavar: str | None = None
        nargs: str | None = None
        help: str | None = None
        action: str | None = None
        required: bool = False
        choices: list[str | int] | None = None
        group: str | None = None
        env_var: str | None = None

        def add_argument_kwargs(self) -> dict[str, typing.Any]:
            renamed = {"type_parser": "type"}
            skipped = {"cmd_name", "group", "env_var"}
            return {
                renamed.get(name, name): value
                for name, value in vars(self).items()
                if value is not None and name not in skipped and not (name == "required" and not value)
            }


@dataclass
class ArgParserDescriptor:
    """Keyword arguments of _SubParsersAction.add_parser for one subcommand."""

    name: str
    formatter_class: typing.Any
    help: str
    description: str
    epilog: str


@dataclass
class ArgsDataClass:
    """Base for the typed argument set of a subcommand. Subclasses declare ArgField fields."""

    @classmethod
    def from_parsed_args_mapping(cls, parsed_args: argparse.Namespace, arg_class=None) -> ArgsDataClass:
        """Rebuilds the args dataclass recorded on the namespace (or arg_class) from the parsed values.

        List values from nargs flags become tuples so the instance stays hashable and immutable.
        """
        if arg_class is None:
            arg_class = parsed_args.arg_class

        params = {}
        for name in inspect.signature(arg_class.__init__).parameters:
            if name == "self":
                continue
            value = getattr(parsed_args, name)
            if isinstance(value, list):
                value = tuple(value)
            params[name] = value
        return arg_class(**params)

    @classmethod
    def get_all_fields(cls) -> dict[str, Field]:
        return {f.name: f for f in fields(cls)}

    @classmethod
    def _default_for(cls, arg: Field, metadata: ArgField.FieldAdditionalMetaData) -> typing.Any:
        if metadata.env_var and metadata.env_var in os.environ:
            raw = os.environ[metadata.env_var]
            parser = metadata.type_parser or str
            try:
                return parser(raw)
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise argparse.ArgumentTypeError(f"{metadata.env_var}={raw!r}: {exc}")
        if arg.default_factory is not MISSING:
            return arg.default_factory()
        return None if arg.default is MISSING else arg.default

    @classmethod
    def add_args_to_parser(cls, parser: argparse.ArgumentParser) -> None:
        """Adds one argument per ArgField, creating mutually exclusive groups on demand.

        Raises:
            argparse.ArgumentTypeError: an environment override does not pass its type parser.
        """
        groups: dict[str, argparse._MutuallyExclusiveGroup] = {}
        for arg in cls.get_all_fields().values():
            if not arg.metadata:
                continue
            metadata = ArgField.FieldAdditionalMetaData(**arg.metadata)
            names = [metadata.cmd_name] if isinstance(metadata.cmd_name, str) else list(metadata.cmd_name)
            target = parser
            if metadata.group is not None:
                if metadata.group not in groups:
                    groups[metadata.group] = parser.add_mutually_exclusive_group()
                target = groups[metadata.group]
            target.add_argument(*names, **metadata.add_argument_kwargs(), default=cls._default_for(arg, metadata))

    @classmethod
    def add_to_args_subparsers(cls, subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Registers the subcommand described by the class's argclass metadata."""
        descriptor: ArgParserDescriptor = getattr(cls, "arg_class_metadata")
        new_parser = subparsers.add_parser(**vars(descriptor))
        new_parser.set_defaults(arg_class=cls)
        cls.add_args_to_parser(new_parser)
        return new_parser

    def validate(self) -> None:
        """Checks flag combinations argparse cannot express. Raises ArgumentValidationError."""


def argclass(name: str, formatter_class: typing.Any, help: str, description: str, epilog: str):
    """Attaches the subparser metadata (name, help, description, epilog) to an ArgsDataClass."""

    def decorator(cls):
        cls.arg_class_metadata = ArgParserDescriptor(
            name=name, formatter_class=formatter_class, help=help, description=description, epilog=epilog
        )
        return cls

    return decorator
