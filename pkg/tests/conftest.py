"""Present so the tests directory lands on sys.path (for ``import util``)."""
