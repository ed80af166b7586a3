from hypothesis import settings

settings.register_profile("warpkit", max_examples=100, deadline=None, derandomize=True)
settings.load_profile("warpkit")
