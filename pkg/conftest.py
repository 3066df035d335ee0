collect_ignore = ["src/treegram/__main__.py"]
