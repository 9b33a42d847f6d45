from . import gettext_lazy

# Defaults, overridable through settings or the environment.
default_step_cap = 10 ** 8
default_enumeration_cap = 22
default_enumerate_max_size = 12
default_retry_budget = 10 ** 6
default_tasks_eager = True
default_seed = 20240101
default_streams = 4
default_sausaging_fixture = 'fixtures/sausaging.json'
sausaging_calibration = (
    'animalab experiment sausaging --calibrate --trials %d --height %d '
    '--seed %d --streams %d')

walk_kind_raw = 'raw'
walk_kind_shaved = 'shaved'
walk_kind_nonpos = 'shaved_conditioned_nonpos'
walk_kind_nonneg = 'conditioned_nonneg'
walk_kind = (
    (walk_kind_raw, gettext_lazy('Animal walk')),
    (walk_kind_shaved, gettext_lazy('Shaved walk')),
    (walk_kind_nonpos, gettext_lazy('Shaved walk conditioned non-positive')),
    (walk_kind_nonneg, gettext_lazy('Walk conditioned non-negative')),
)
# Names accepted on the command line.
walk_kind_cli = {
    'raw': walk_kind_raw,
    'shaved': walk_kind_shaved,
    'nonpos': walk_kind_nonpos,
    'nonneg': walk_kind_nonneg,
}

path_class_any = 'any'
path_class_pyramid = 'pyramid'
path_class_nonneg = 'nonneg_pyramid'
path_class = (
    (path_class_any, gettext_lazy('Any simple animal')),
    (path_class_pyramid, gettext_lazy('Pyramid')),
    (path_class_nonneg, gettext_lazy('Non-negative pyramid')),
)

kernel_bhp = 'BHP'
kernel_uip = 'UIP'
kernel_uipp = 'UIP_PLUS'
kernel_kind = (
    (kernel_bhp, gettext_lazy('Boltzmann half-pyramid')),
    (kernel_uip, gettext_lazy('Uniform infinite pyramid')),
    (kernel_uipp, gettext_lazy('Uniform infinite non-negative pyramid')),
)
kernel_kind_cli = {
    'bhp': kernel_bhp,
    'uip': kernel_uip,
    'uipp': kernel_uipp,
}

# UIP_MINUS is only a ball model, its layers are mirrored UIP_PLUS layers.
model_uipm = 'UIP_MINUS'
model_bluered = 'BLUERED'
model_cli = {
    'bhp': kernel_bhp,
    'uip': kernel_uip,
    'uipp': kernel_uipp,
    'uipm': model_uipm,
    'bluered': model_bluered,
}

count_pyramid = 'pyramid'
count_half = 'half_pyramid'
count_compact = 'compact_source'
count_kind = (
    (count_pyramid, gettext_lazy('Pyramid')),
    (count_half, gettext_lazy('Non-negative half-pyramid')),
    (count_compact, gettext_lazy('Compact source')),
)
count_kind_cli = {
    'pyramid': count_pyramid,
    'half': count_half,
    'compact': count_compact,
}

order_less = 'less'
order_greater = 'greater'
order_equal = 'equal'
order_incomparable = 'incomparable'

render_squares = 'squares'
render_dominoes = 'dominoes'
render_style = (
    (render_squares, gettext_lazy('Rotated squares')),
    (render_dominoes, gettext_lazy('Heap of dominoes')),
)

report_csv = 'csv'
report_json = 'json'
report_columns = (
    'experiment', 'event', 'trials', 'empirical',
    'exact_num', 'exact_den', 'stderr', 'z',
)

identity_jolie = 'jolie'
identity_gencomb_uip = 'gencomb_uip'
identity_gencomb_bhp = 'gencomb_bhp'
identity_gencomb_uipp = 'gencomb_uipp'
identity_fmax = 'fmax'
identity_fmaxmin = 'fmaxmin'
identity_eta = 'eta'
identity_kernels = 'kernels'
identity_bridge = 'bridge'
identity_renewal = 'renewal'
identity_bijection = 'bijection'
# `gencomb` on the command line runs every summation identity.
identity_gencomb = 'gencomb'
# Paths of the bijection check stay in [-window, window].
bijection_window = 12
identity_names = (
    identity_jolie, identity_gencomb_uip, identity_gencomb_bhp,
    identity_gencomb_uipp, identity_fmax, identity_fmaxmin, identity_eta,
    identity_kernels, identity_bridge, identity_renewal, identity_bijection,
)

# Reference sequences: directed animals with one source (A005773) and
# Motzkin numbers (A001006), both starting at index 0.
oeis_a005773 = (
    1, 1, 2, 5, 13, 35, 96, 267, 750, 2123, 6046, 17303, 49721, 143365,
    414584, 1201917,
)
oeis_a001006 = (
    1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511, 41835,
    113634, 310572,
)
