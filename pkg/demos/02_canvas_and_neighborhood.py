"""The drawing surface: proposal rings, inking, and the CSV dump.

The canvas is a 24x14 grid of panels. Colors are never painted directly:
the agent proposes a ring of colors around the pointer (the Moore
neighborhood) and moving onto a proposed panel inks it permanently.
"""

from banditcanvas import GridCanvas, GridDims, MOORE_OFFSETS, PanelPaint, moore_neighborhood

canvas = GridCanvas(GridDims())  # 24x14, all white

# The Moore neighborhood is the 8 cells around the pointer; at corners the
# off-grid cells are dropped.
print("around (5,5):", moore_neighborhood((5, 5), canvas.dims))
print("around (0,0):", moore_neighborhood((0, 0), canvas.dims))

# Propose a ring of arm-3 paint around (5,5)...
ring = {o: PanelPaint(arm=3, opacity=2) for o in MOORE_OFFSETS}
canvas.set_proposals((5, 5), ring)
print("\nproposals placed:", sorted(canvas.proposals))

# ...move onto (5,4): that panel keeps its color permanently.
paint = canvas.ink_panel((5, 4))
print("inked (5,4):", paint)

# Proposals are transient: re-centering the ring replaces them all. When
# the ring covers an already-painted panel, the proposal shadows it
# visually; only inking again commits the new color.
canvas.set_proposals((5, 3), {o: PanelPaint(arm=9, opacity=4) for o in MOORE_OFFSETS})
print("painted cells:", dict(canvas.painted))
print("painted (5,4) shows its shadow proposal:", canvas.visible_paint((5, 4)))
print("...but stays committed as:", canvas.painted[(5, 4)])

# The CSV dump is row-major, `arm:opacity` per painted panel, -1 for white,
# and round-trips exactly.
dump = canvas.export_csv()
print("\nfirst two rows of the dump:")
print("\n".join(dump.splitlines()[:2]))
rebuilt = GridCanvas.import_csv(dump)
print("round-trip identity:", rebuilt == GridCanvas.import_csv(rebuilt.export_csv()))
