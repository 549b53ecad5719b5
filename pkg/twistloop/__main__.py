from twistloop.main import main

main()
