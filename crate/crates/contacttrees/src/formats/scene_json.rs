//! Scene JSON for viewers: the scene graph with every number rounded to
//! three decimals and object keys sorted.

use contacttrees_core::scene::SceneGraph;

pub const SCENE_PRECISION: u32 = 3;

pub fn scene_to_json(scene: &SceneGraph) -> Vec<u8> {
    let mut scene = scene.clone();
    scene.quantize(SCENE_PRECISION);
    // Going through `Value` sorts the keys of every object.
    let value = serde_json::to_value(&scene).expect("scene serializes");
    serde_json::to_vec(&value).expect("scene serializes")
}

pub fn scene_from_json(bytes: &[u8]) -> Result<SceneGraph, serde_json::Error> {
    serde_json::from_slice(bytes)
}
