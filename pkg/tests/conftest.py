from hypothesis import settings

settings.register_profile("etcrit", deadline=None, max_examples=100)
settings.load_profile("etcrit")
