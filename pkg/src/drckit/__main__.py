from .cli_io import main_entry

main_entry()
