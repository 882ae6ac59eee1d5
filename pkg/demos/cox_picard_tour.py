"""A walk through the invariants attached to each fan in the catalog.

For every fixture it prints the fan properties, the class group and the
ray degrees, the irrelevant ideal, and the index of the Picard group.
"""
from toricschemes import catalog
from toricschemes.cox import SubgroupB, cox_grading, irrelevant_ideal, is_big, is_small
from toricschemes.errors import ToricError
from toricschemes.fan import is_complete, is_full, is_simplicial
from toricschemes.picard import picard_group


def describe(name):
    try:
        fan = catalog.load_fan(name)
    except ToricError as exc:
        print(f"{name}: rejected ({exc.code})")
        return
    if fan.is_empty:
        print(f"{name}: empty fan")
        return
    g = cox_grading(fan)
    whole = SubgroupB.whole(g)
    pic = picard_group(fan, g)
    print(f"{name}:")
    print(f"  complete={is_complete(fan)} full={is_full(fan)} simplicial={is_simplicial(fan)}")
    print(f"  class group {g.class_group.to_json()}")
    print(f"  ray degrees {[list(d.coords) for d in g.ray_degrees]}")
    print(f"  irrelevant ideal {irrelevant_ideal(fan).to_json()}")
    print(f"  big={is_big(whole, g)} small={is_small(whole, fan, g)}")
    print(f"  Pic index {pic.to_json()['index_in_A']}")


def main():
    for path in sorted(catalog.catalog_dir().glob("*.json")):
        describe(path.stem)


if __name__ == "__main__":
    main()
