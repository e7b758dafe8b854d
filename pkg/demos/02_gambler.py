# coding: utf-8

# # Chasing a gambler
#
# The gambler does not run. Each round he lands on vertex v with probability
# p[v], independently of everything before. The cop captures him if he lands
# on her vertex. In between hops she can step to a neighbour or stay put.

# In[1]:

import numpy as np

from copkiller.gambler import (
    Distribution,
    EdgeDelays,
    capture_time,
    capture_time_delays,
    encode_cops,
    evasion,
    multicop_capture_time,
)
from copkiller.graphs import path, star

# Expected capture time on a three-vertex path when the gambler never visits
# the middle: from either end the cop just waits (2 rounds on average). From
# the middle she steps out first, which costs one extra round.

# In[2]:

res = capture_time(path(3), [0.5, 0.0, 0.5])
print(res.values, ["stay" if res.is_stay(v) else f"go to {res.target(v)}" for v in range(3)])

# Slow edges: crossing from the middle now takes two extra rounds.

# In[3]:

slow = EdgeDelays(path(3), {(1, 0): 2, (1, 2): 2})
print(capture_time_delays(path(3), [0.5, 0.0, 0.5], slow).values)

# # Surviving a fixed number of rounds
#
# `evasion` gives the smallest chance the gambler survives m rounds against
# the best cop. Row j is the horizon j.

# In[4]:

e = evasion(path(2), [0.5, 0.5], 4)
print(e)

# # Several cops
#
# A team of cops moves together; each one may step or stay. On a star with a
# uniform gambler, two cops starting at the centre split up and capture in 2.5
# rounds on average, against 4 for a lone cop.

# In[5]:

team = multicop_capture_time(star(3), Distribution.uniform(4), 2)
print(capture_time(star(3), Distribution.uniform(4)).values[0], team.values[encode_cops((0, 0), 4)])
print(np.round(team.values.reshape(4, 4), 3))
