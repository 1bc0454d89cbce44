"""Random reverse-walk generation of k-step proofs and question candidates.

Starting from a target expression, repeatedly jump to a uniformly chosen
frontier member. Because every rule application is invertible under the same
rule id, the recorded walk read backwards is a valid proof ending at the
target. Walks never step to the current expression or straight back to the
previous one when an alternative exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .expr import Expr, normalize, print_canonical, variables
from .frontier import frontier_gen
from .search import Proof, ProofStep


class EmptyFrontier(RuntimeError):
    """Internal assertion: every expression has a nonempty frontier."""


@dataclass(frozen=True)
class GeneratedProof:
    proof: Proof  # premise = end of the walk, target = seed expression
    seed_expr: Expr
    steps: int
    rng_seed: int


def proof_gen(
    target: Expr, steps: int, vocab: set[str], rng_seed: int
) -> GeneratedProof:
    """Walk *steps* random rewrites away from *target*; the reversed walk is
    a proof of the original equivalence. Deterministic per *rng_seed*."""
    if steps < 0:
        raise ValueError("step count must be nonnegative")
    if not vocab >= variables(target):
        raise ValueError("vocabulary must cover the target's variables")
    rng = random.Random(rng_seed)
    target = normalize(target)
    walk: list[tuple[Expr, Expr]] = []  # (expression stepped to, via rule)
    current = target
    previous: Expr | None = None
    for _ in range(steps):
        entries = frontier_gen(current, vocab).entries
        if not entries:
            raise EmptyFrontier(print_canonical(current))
        candidates = [
            t for t in entries
            if t.result != current and (previous is None or t.result != previous)
        ]
        if not candidates:
            candidates = list(entries)
        chosen = rng.choice(candidates)
        walk.append((chosen.result, chosen.rule))
        previous = current
        current = chosen.result

    # Reversed, each walk edge replays under the same rule (inverse closure).
    proof_steps = []
    states = [target] + [expr for expr, _ in walk]
    for k in range(len(walk) - 1, -1, -1):
        _, rule = walk[k]
        proof_steps.append(ProofStep(rule=rule, expr=states[k]))
    return GeneratedProof(
        proof=Proof(
            premise=current, target=target, steps=tuple(proof_steps), complete=True
        ),
        seed_expr=target,
        steps=steps,
        rng_seed=rng_seed,
    )


def make_dataset(
    targets: list[Expr], steps: int, count_per_target: int, rng_seed: int
):
    """Batch driver over proof_gen producing bank questions.

    Questions carry the walk end as premise and the seed as target, labelled
    by walk length; duplicate premise/target pairs are dropped.
    """
    from .bank import Question, level_for_steps

    rng = random.Random(rng_seed)
    questions = []
    seen: set[tuple[str, str]] = set()
    for t_index, target in enumerate(targets):
        vocab = variables(target)
        for k in range(count_per_target):
            generated = proof_gen(target, steps, vocab, rng_seed=rng.randrange(2**32))
            premise = generated.proof.premise
            key = (print_canonical(premise), print_canonical(generated.proof.target))
            if key[0] == key[1] or key in seen:
                continue
            seen.add(key)
            questions.append(
                Question(
                    id=f"gen{steps}-{t_index:02d}-{k:03d}",
                    level=level_for_steps(steps),
                    premise=premise,
                    target=generated.proof.target,
                    witness=generated.proof,
                )
            )
    return questions
