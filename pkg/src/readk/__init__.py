"""Read-k monotone formulas, chain graphs and local biclique covers."""
