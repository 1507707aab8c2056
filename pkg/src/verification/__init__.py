"""Independent checks and randomized drivers for the inscribed-ellipse library."""
