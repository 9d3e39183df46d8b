"""Batch command line interface of the lab."""
