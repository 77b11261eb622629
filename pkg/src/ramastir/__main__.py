from ramastir.cli import entry

entry()
