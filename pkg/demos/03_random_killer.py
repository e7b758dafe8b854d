# coding: utf-8

# # A killer who hops at random
#
# Now the killer hops like the gambler, from a law the cop knows, but he is
# dangerous: landing on the cop kills her. Landing next to her is fatal for
# him, because she steps onto him on her turn.

# In[1]:

import math

from copkiller.graphs import path, star
from copkiller.random_killer import (
    best_first_move,
    cop_value,
    evaluate_policy,
    game_value_from_start,
    killer_best_distribution,
    sqrt_bound,
    star_distribution,
)

# On a star with d leaves a good law for the killer puts 1/(1+sqrt d) on the
# centre and spreads the rest over the leaves. The cop then wins with
# probability sqrt d / (1 + sqrt d) and no better.

# In[2]:

for d in (2, 3, 4, 9):
    p = star_distribution(d)
    print(d, round(game_value_from_start(star(d), p, 0), 6), round(sqrt_bound(d), 6))

# Win, lose and stalemate chances of the cop's best play from the centre.

# In[3]:

p = star_distribution(4)
policy = cop_value(star(4), p)
first = best_first_move(star(4), policy.values, 0)
print(evaluate_policy(star(4), p, policy, first))

# # Searching for the killer's law
#
# Without a formula, a seeded restart search over the simplex looks for the
# law that hurts the cop most. It finds the star law again.

# In[4]:

found, value = killer_best_distribution(star(4), 0)
print(found.p.round(4), round(value, 5), "centre mass vs", round(1 / (1 + math.sqrt(4)), 4))

# On a single edge the killer can do no better than a fair coin.

# In[5]:

print(killer_best_distribution(path(2), 0))
