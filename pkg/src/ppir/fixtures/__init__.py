"""Bundled worked scenarios, usable from tests, demos, and the command line."""

from importlib import resources

NAMES = (
    "five_class.json",
    "six_class.json",
    "two_user_seven_class.json",
    "fsi_three_class.json",
    "two_user_three_class.json",
    "tiny_two_class.json",
)


def fixture_path(name: str):
    """Filesystem path of a bundled fixture (context-manager-free convenience)."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(NAMES)}")
    return resources.files(__package__).joinpath(name)
