from cli.polya_cli import main

main()
