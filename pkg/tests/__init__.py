"""Test suite for geofilt."""
