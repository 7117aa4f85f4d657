from .cli import app


def main():
    app(prog_name="tourneysim")


if __name__ == "__main__":
    main()
