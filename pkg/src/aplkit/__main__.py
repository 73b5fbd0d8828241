from aplkit.cli import main

raise SystemExit(main())
