"""Link families, verification suite and command-line interface."""
