from hypothesis import settings

# numpy warm-up on the first example can exceed the default per-example deadline
settings.register_profile("counter-erasure", deadline=None)
settings.load_profile("counter-erasure")
