"""Core services: codec, networks, data, training and metrics."""
