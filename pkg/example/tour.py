import numpy as np
import progressbar

from gupqm import *
from gupqm.logger import logger


################################################################################
# SYSTEM SETUP

# planar oscillator with a small minimal length
params = ModelParams(m=1.0, hbar=1.0, omega=1.0, alpha=1e-3, D=2)
q0, qf = (0.3, -0.2), (0.8, 0.5)

logger.info("Minimal length %.4g" % minimal_length(params.alpha, params.hbar)[0])

################################################################################
# PROPAGATION

steps = 40                      # sampled times
times = np.linspace(0.1, 3.0, steps)

# setup progressbar for print progress
bar = progressbar.ProgressBar(max_value=steps)

values = []
for i, T in enumerate(times):
    values.append(kernel(params, Endpoints(q0, qf, TimeArg.real(T))))
    bar.update(i + 1)
bar.finish()

corrections = [abs(v.amplitude / v.leading_prefactor) - 1 for v in values]
logger.info("Largest relative correction %.3g" % max(np.abs(corrections)))

################################################################################
# CONSISTENCY

e = Endpoints(q0, qf, TimeArg.real(1.5))
logger.info(
    "Composition residual %.3g"
    % composition_check_analytic(params, e, 0.6).relative
)
logger.info(
    "Wrong beta2 residual %.3g"
    % composition_check_analytic(
        params, e, 0.6, PrefactorSpec.canonical(2).perturbed(2, 0.5)
    ).relative
)
logger.info("Schrodinger residual %.3g" % schrodinger_residual(params, e).relative)

failures = [r for r in run_suite('all', params, seed=1234, trials=5) if r.passed is False]
logger.info("%d failed checks" % len(failures))

################################################################################
# SPECTRUM & GREEN FUNCTION

for (n1, n2), oracle in zip(
        [(0, 0), (1, 0), (0, 1)], oscillator_matrix_oracle(params, 24, 3)
):
    logger.info("E(%d,%d) = %.8f, oracle %.8f"
                % (n1, n2, sho_energy_2d(n1, n2, params).value, oracle))

plane = ModelParams(D=2, alpha=5e-3)
g = GreenQuery(0.5, (0, 0), (1, 0), plane)
logger.info("G = %.6f, Laplace %.6f" % (
    green_free_2d_closed(g), laplace_numeric(plane, g.q0, g.qf, g.epsilon)
))

###############################################################################
# PLOTTING

# plot.bound_region(0.1, 1.0, np.linspace(0.2, 6.0, 200)).show()
# plot.kernel_profile(params, q0, np.linspace(-2, 2, 200), 1.5).show()
