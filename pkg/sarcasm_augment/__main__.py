"""Allow ``python -m sarcasm_augment``."""

from sarcasm_augment.cli import main

if __name__ == "__main__":
    main()
