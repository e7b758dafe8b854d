# coding: utf-8

# # The cop and the killer
#
# Two players sit on the vertices of a graph. The cop picks a vertex, then the
# killer picks a different one, and from then on they take turns (cop first)
# stepping to a neighbouring vertex. Nobody may stand still. Whoever steps onto
# the other player wins; if that never happens the game is a stalemate.

# In[1]:

from copkiller.graphs import cycle, grid, king, path, pentagon_plus, star
from copkiller.pursuit import Turn, optimal_move, solve

# A triangle is easy for the cop: whatever the killer picks is next to her.

# In[2]:

print(solve(cycle(3)).verdict.text)

# The four-cycle flips that around. The killer takes the opposite corner, and
# because moves are forced the cop must step next to him.

# In[3]:

out = solve(cycle(4))
print(out.verdict.text, "cop at", out.cop_start, "killer at", out.killer_reply)

# On a five-cycle neither side can force anything.

# In[4]:

for g, name in [(cycle(5), "C5"), (path(4), "P4"), (star(5), "star with 5 leaves"),
                (grid(2, 3), "2x3 grid"), (king(3, 3), "3x3 king graph"), (king(4, 4), "4x4 king graph"),
                (pentagon_plus(), "pentagon plus a hub")]:
    print(f"{name:>22}: {solve(g).verdict.text}")

# # Looking inside the solution
#
# `solve` keeps the full state table: a label and the number of plies to
# capture for every (cop, killer, whose turn) state.

# In[5]:

table = out.table
print(table.label(0, 2, Turn.COP).text, table.dist(0, 2, Turn.COP))
print(table.label(0, 2, Turn.KILLER).text, table.dist(0, 2, Turn.KILLER))

# With the killer to move at (0, 2), stepping to 1 puts him next to the cop,
# who captures him straight away.

# In[6]:

print(optimal_move(table, 0, 2, Turn.KILLER))

# The witness lists a move for every state where the side to move is not lost.

# In[7]:

moves = out.witness()
print(len(moves), "states with a non-losing move on C4")
