from hypothesis import settings

# One deterministic profile for the whole suite: reruns must produce the
# same pass/fail outcome byte for byte.
settings.register_profile("suite", derandomize=True, max_examples=50,
                          deadline=None)
settings.load_profile("suite")
