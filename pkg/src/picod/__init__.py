"""Decentralized pliable index coding: synthesis, verification, bounds."""
