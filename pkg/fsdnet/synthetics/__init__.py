"""
Seeded synthetic populations and graphs

"""
from .spec import GeneratorSpec, Model, DEFAULT_PARAMS, make_rng
from .generators import (
    gen_log_uniform, gen_power_law, gen_pinterest_min5, gen_botnet_band,
    gen_leading_one, generate, draw, stream_digest, expected_power_law_fsd
)
from .graph import EgoPlan, plan_egos, build_synthetic_graph
from .sampling import simulate_id_sampling
