"""Command-line subcommands, one package per command."""
