"""
Drawing a horocycle process
===========================

In the plane every horocycle embeds in the Poincare disc as a circle
internally tangent to the boundary.  Sample one realization and write it
out as an SVG.
"""

from horospheres.render import horocycle_scene, render_svg

R = 3.0
seed = 2026

scene = horocycle_scene(R, seed)
print(f"R = {R:g}, seed = {seed}: {len(scene.circles)} horocycles hit the ball")

# circles with radius above 1/2 enclose the origin (signed distance s > 0)
enclosing = sum(1 for c in scene.circles if c.radius > 0.5)
print(f"{enclosing} of them enclose the origin")

svg = render_svg(scene, metadata=f"R={R:g} seed={seed}")
with open("horocycles.svg", "w") as fh:
    fh.write(svg)
print("wrote horocycles.svg")
