"""CLI, experiment runners and JSON-lines persistence."""
