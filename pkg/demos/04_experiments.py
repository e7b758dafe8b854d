# coding: utf-8

# # Experiments
#
# Each runner returns a report whose JSON form is byte-identical across runs
# with the same parameters and seed.

# In[1]:

from copkiller.experiments import (
    experiment_constructions,
    experiment_enumerate,
    experiment_products,
    experiment_random_stalemate,
)

# Every labeled graph on up to six vertices, solved in one batch.

# In[2]:

report = experiment_enumerate(6)
for n, stats in report.aggregates["per_n"].items():
    print(n, stats["cop_win"], stats["killer_win"], stats["stalemate"])
print(report.checks)

# Killer-win graphs never have exactly one or two triangles.

# In[3]:

print(report.aggregates["per_n"][6]["killer_win_triangle_histogram"])

# Products of small graphs against the predicted verdicts.

# In[4]:

prod = experiment_products()
print(prod.aggregates["agreements"], "of", prod.aggregates["predicted"], "predictions hold")

# Dense random graphs are almost always stalemates.

# In[5]:

rand = experiment_random_stalemate(100, 0.5, 40, seed=7)
print(rand.aggregates["stalemate_fraction"], rand.aggregates["certificate_violations"])

# Named constructions; a three-triangle chain cannot avoid a shared vertex,
# so that row reports an error instead of a verdict.

# In[6]:

cons = experiment_constructions()
for row in cons.cases:
    print(f"{row['row']:>28} {row.get('verdict')!s:>10} {'ok' if row['ok'] else row.get('error', 'mismatch')}")
