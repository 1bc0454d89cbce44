"""Genetic algorithm over heuristic weight vectors.

Fitness is the number of training questions the solver completes within a
per-question time budget. Selection is fitness-proportionate with elitism;
crossover mixes genes uniformly; mutation resets one gene to a fresh uniform
value in the weight box. Everything is deterministic given the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .rules import RuleId
from .search import (
    HeuristicWeights,
    SearchConfig,
    WEIGHT_MAX,
    WEIGHT_MIN,
    astar_solve,
)

# Gene order: the four comparators, the start prior, then one prior per rule.
GENE_NAMES = ["unitary", "levenshtein", "variable_mismatch", "length_difference", "start"] + [
    r.value for r in RuleId
]
GENOME_LENGTH = len(GENE_NAMES)

Genome = tuple[float, ...]


def genome_to_weights(genome: Sequence[float]) -> HeuristicWeights:
    if len(genome) != GENOME_LENGTH:
        raise ValueError(f"genome must have {GENOME_LENGTH} genes")
    rules = dict(zip(RuleId, genome[5:]))
    return HeuristicWeights(
        unitary=genome[0],
        levenshtein=genome[1],
        variable_mismatch=genome[2],
        length_difference=genome[3],
        start=genome[4],
        rules=rules,
    )


def weights_to_genome(w: HeuristicWeights) -> Genome:
    return (
        w.unitary,
        w.levenshtein,
        w.variable_mismatch,
        w.length_difference,
        w.start,
    ) + tuple(w.rules[r] for r in RuleId)


@dataclass(frozen=True)
class Individual:
    weights: HeuristicWeights
    fitness: int


@dataclass
class GAConfig:
    population_size: int
    generations: int
    per_question_time: float
    training_set: list  # of bank.Question
    elitism: int
    crossover_prob: float
    mutation_prob: float
    rng_seed: int
    depth_limit: int = 10

    def __post_init__(self):
        if not 0 <= self.elitism < self.population_size:
            raise ValueError("elitism must be smaller than the population")
        for name in ("crossover_prob", "mutation_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be a probability")
        if self.per_question_time <= 0:
            raise ValueError("per-question time must be positive")
        if not self.training_set:
            raise ValueError("training set must be nonempty")


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best: int
    mean: float
    degenerate: bool  # all fitnesses zero; selection fell back to uniform


def fitness(
    w: HeuristicWeights,
    questions: Sequence,
    per_question_time: float,
    depth_limit: int = 10,
) -> int:
    """Number of questions solved to completion within the time budget."""
    if not questions:
        raise ValueError("fitness needs at least one question")
    cfg = SearchConfig(time_budget=per_question_time, depth_limit=depth_limit)
    solved = 0
    for question in questions:
        proof = astar_solve(question.premise, question.target, w, cfg)
        if proof.complete:
            solved += 1
    return solved


def _random_genome(rng: random.Random) -> Genome:
    return tuple(rng.uniform(WEIGHT_MIN, WEIGHT_MAX) for _ in range(GENOME_LENGTH))


def _select_parent(
    rng: random.Random, population: list[Genome], fitnesses: list[int], total: int
) -> Genome:
    if total == 0:
        return population[rng.randrange(len(population))]
    pick = rng.uniform(0.0, total)
    cumulative = 0.0
    for genome, fit in zip(population, fitnesses):
        cumulative += fit
        if pick <= cumulative:
            return genome
    return population[-1]


def next_generation(
    rng: random.Random,
    population: list[Genome],
    fitnesses: list[int],
    cfg: GAConfig,
) -> list[Genome]:
    """One selection/crossover/mutation round. Elites survive unchanged."""
    ranked = sorted(
        range(len(population)), key=lambda k: (-fitnesses[k], k)
    )
    offspring: list[Genome] = [population[k] for k in ranked[: cfg.elitism]]
    total = sum(fitnesses)
    while len(offspring) < cfg.population_size:
        mother = _select_parent(rng, population, fitnesses, total)
        father = _select_parent(rng, population, fitnesses, total)
        if rng.random() < cfg.crossover_prob:
            child = tuple(
                m if rng.random() < 0.5 else f for m, f in zip(mother, father)
            )
        else:
            child = mother
        if rng.random() < cfg.mutation_prob:
            genes = list(child)
            genes[rng.randrange(GENOME_LENGTH)] = rng.uniform(
                WEIGHT_MIN, WEIGHT_MAX
            )
            child = tuple(genes)
        offspring.append(child)
    return offspring


def evolve(cfg: GAConfig) -> tuple[Individual, list[GenerationStats]]:
    """Run the GA; returns the best individual ever seen and the history."""
    rng = random.Random(cfg.rng_seed)
    population = [_random_genome(rng) for _ in range(cfg.population_size)]
    cache: dict[Genome, int] = {}

    def evaluate(genome: Genome) -> int:
        cached = cache.get(genome)
        if cached is None:
            cached = fitness(
                genome_to_weights(genome),
                cfg.training_set,
                cfg.per_question_time,
                cfg.depth_limit,
            )
            cache[genome] = cached
        return cached

    history: list[GenerationStats] = []
    best_genome: Optional[Genome] = None
    best_fitness = -1
    for generation in range(cfg.generations):
        fitnesses = [evaluate(g) for g in population]
        top = max(range(len(population)), key=lambda k: (fitnesses[k], -k))
        if fitnesses[top] > best_fitness:
            best_fitness = fitnesses[top]
            best_genome = population[top]
        history.append(
            GenerationStats(
                generation=generation,
                best=fitnesses[top],
                mean=sum(fitnesses) / len(fitnesses),
                degenerate=sum(fitnesses) == 0,
            )
        )
        if generation + 1 < cfg.generations:
            population = next_generation(rng, population, fitnesses, cfg)
    assert best_genome is not None
    return Individual(genome_to_weights(best_genome), best_fitness), history
