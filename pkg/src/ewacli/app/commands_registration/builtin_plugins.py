from ewacli.cli.bench import plugin_spec as bench_plugin_spec
from ewacli.cli.cv import plugin_spec as cv_plugin_spec
from ewacli.cli.fit import plugin_spec as fit_plugin_spec
from ewacli.cli.predict import plugin_spec as predict_plugin_spec
from ewacli.cli.rates import plugin_spec as rates_plugin_spec
from ewacli.cli.simulate import plugin_spec as simulate_plugin_spec

# plugin name to plugin spec
builtin_plugin_name_to_plugin_spec = {
    "fit": fit_plugin_spec,
    "predict": predict_plugin_spec,
    "simulate": simulate_plugin_spec,
    "bench": bench_plugin_spec,
    "cv": cv_plugin_spec,
    "rates": rates_plugin_spec,
}
