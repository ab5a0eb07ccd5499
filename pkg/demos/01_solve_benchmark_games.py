"""Build the benchmark games, solve them, and inspect their size.

The two benchmark families are N-card Kuhn poker and N-rank Leduc hold'em.
A game's size is summarized by two quantities that drive solver cost: the
total number of sequences (one per infoset-action pair plus an empty
sequence per player) and the number of nonzeros in the sequence-form
utility matrix.
"""

from gamevec import (
    KuhnSpec,
    LeducSpec,
    best_response,
    build_kuhn,
    build_leduc,
    exploitability,
    game_value,
    size_metrics,
    solve,
    uniform_profile,
)

# Classic 3-card Kuhn poker first: small enough to print everything.
kuhn = build_kuhn(KuhnSpec(num_cards=3))
print("3-card Kuhn:", size_metrics(kuhn))

profile, report = solve(kuhn, max_iterations=10_000, target_eps=1e-6)
print(f"  solved in {report.iterations} iterations, "
      f"exploitability {report.exploitability:.2e}")
print(f"  player-1 value {game_value(kuhn, profile):.6f} "
      "(theory: -1/18 = -0.0556)")

# The uniform strategy is far from equilibrium; a best response punishes it.
uniform = uniform_profile(kuhn)
value, _ = best_response(kuhn, uniform, player=0)
print(f"  best response vs uniform earns {value:.4f} "
      f"(exploitability {exploitability(kuhn, uniform):.4f})")

# Scale the deck up. 256-Kuhn has 512 chance events (a deal per player and
# card) and half a million tree nodes, but solves in seconds because the
# solver works on the sparse sequence-form representation.
kuhn256 = build_kuhn(KuhnSpec(num_cards=256))
print("\n256-card Kuhn:", size_metrics(kuhn256))
profile, report = solve(kuhn256, max_iterations=100_000, target_eps=1e-6)
print(f"  solved in {report.iterations} iterations "
      f"({report.wall_time:.1f}s), exploitability "
      f"{report.exploitability:.2e}")

# Leduc hold'em adds a public board card and a second betting round.
leduc = build_leduc(LeducSpec(num_ranks=3))
print("\n3-rank Leduc:", size_metrics(leduc))
profile, report = solve(leduc, max_iterations=100_000, target_eps=1e-5)
print(f"  solved in {report.iterations} iterations, "
      f"exploitability {report.exploitability:.2e}")
print(f"  player-1 value {game_value(leduc, profile):.6f}")
