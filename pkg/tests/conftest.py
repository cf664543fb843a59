from hypothesis import strategies as st

from multistair.diagram import addable_boxes, from_boxes, single_box


@st.composite
def diagrams(draw, k_min=1, k_max=4, max_boxes=8):
    """Grow an order ideal from the origin by adding random addable boxes."""
    k = draw(st.integers(k_min, k_max))
    n = draw(st.integers(1, max_boxes))
    d = single_box(k)
    for _ in range(n - 1):
        options = addable_boxes(d)
        pick = options[draw(st.integers(0, len(options) - 1))]
        d = from_boxes(k, list(d.boxes) + [pick])
    return d


partitions = st.lists(st.integers(1, 6), min_size=1, max_size=6).map(
    lambda p: tuple(sorted(p, reverse=True)))
