"""Bundled run descriptions; load by name via qnetdyn.config.load_preset."""
