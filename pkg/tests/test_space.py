import pytest

from hdlearn.arithmetic import random_hypervector
from hdlearn.exceptions import DimensionMismatchError, InvalidInputError
from hdlearn.space import Space

D = 2000


@pytest.fixture
def space(rng):
    space = Space(dim=D)
    for name in ("apple", "banana", "cherry"):
        vector = random_hypervector(D, rng, name=name)
        space.insert(vector, tags=["fruit"])
    return space


def test_insert_and_get(space):
    assert len(space) == 3
    assert "banana" in space
    assert space.get("banana").name == "banana"
    assert space.names() == ["apple", "banana", "cherry"]


def test_insert_rejects_duplicates_and_unnamed(space, rng):
    with pytest.raises(InvalidInputError):
        space.insert(random_hypervector(D, rng, name="apple"))
    with pytest.raises(InvalidInputError):
        space.insert(random_hypervector(D, rng))


def test_insert_rejects_other_dimension(space, rng):
    with pytest.raises(DimensionMismatchError):
        space.insert(random_hypervector(D // 2, rng, name="kiwi"))


def test_find_returns_the_vector_itself(space):
    name, similarity = space.find(space.get("cherry"))
    assert name == "cherry"
    assert similarity == pytest.approx(1.0)


def test_find_all_is_sorted(space):
    ranked = space.find_all(space.get("apple"))
    scores = [score for _, score in ranked]
    assert ranked[0][0] == "apple"
    assert scores == sorted(scores, reverse=True)


def test_tags_follow_members(space):
    space.add_tag("cherry", "red")
    assert space.names_with_tag("red") == {"cherry"}
    assert space.tags_of("cherry") == {"fruit", "red"}

    space.remove("cherry")
    assert space.names_with_tag("red") == set()
    assert space.names_with_tag("fruit") == {"apple", "banana"}


def test_remove_tag(space):
    space.remove_tag("apple", "fruit")
    assert space.tags_of("apple") == set()


def test_unknown_member(space):
    with pytest.raises(InvalidInputError):
        space.get("durian")
    with pytest.raises(InvalidInputError):
        space.add_tag("durian", "spiky")


def test_find_in_empty_space(rng):
    with pytest.raises(InvalidInputError):
        Space(dim=16).find(random_hypervector(16, rng))
