"""Fold a chain of statements into one accumulator and settle it once.

Each step pins a fresh committed polynomial to a shared target; the
accumulator carries a digest chain plus a running claim, and a single
finalize call settles the whole history. Compares the settle cost
against checking every step in isolation.
"""

import random
import time

from lumen import GOLDILOCKS, Poly, agg_init, agg_step, finalize_verify, make_step
from lumen.groups import test_known_order_spec
from lumen.pcs import setup

F = GOLDILOCKS
STEPS = 12


def main():
    pp = setup(128, 64, 4, b"demo-03", group=test_known_order_spec())
    rng = random.Random(3)

    state = agg_init(pp)
    steps = []
    for i in range(STEPS):
        f = Poly(F, [rng.randrange(F.modulus) for _ in range(pp.d)])
        step = make_step(pp, f, b"demo-03/step" + bytes([i]), state.k_exp)
        state = agg_step(pp, state, step)
        steps.append(step)
    print(f"chain of {state.step_count} steps, "
          f"digest fold {state.digest_chain}")

    t0 = time.perf_counter()
    ok = finalize_verify(pp, state, steps)
    settle = time.perf_counter() - t0
    print(f"finalize: {'accepted' if ok else 'REJECTED'} in {settle * 1000:.1f} ms")

    # the naive alternative: settle every step as its own 1-step chain
    t0 = time.perf_counter()
    alone = 0
    for step in steps:
        solo = agg_step(pp, agg_init(pp), step)
        alone += finalize_verify(pp, solo, [step])
    isolated = time.perf_counter() - t0
    print(f"isolated checks: {alone}/{STEPS} accepted in {isolated * 1000:.1f} ms")
    if settle > 0:
        print(f"amortization: settle / isolated = {settle / isolated:.3f}")

    # reordering history must break the digest chain
    swapped = [steps[1], steps[0]] + steps[2:]
    print("reordered chain:",
          "accepted (BUG)" if finalize_verify(pp, state, swapped) else "rejected, as it must be")


if __name__ == "__main__":
    main()
