#!/usr/bin/env python3
"""
Simple example: classify two Gaussian blobs with hypervectors

This is the minimal starting point for hdlearn.
One dataset, one model, clear results.

Usage:
1. Install dependencies: pip install -r requirements.txt
2. Run: python simple_example.py
"""

from hdlearn import ClassificationModel, StandardBenchmarks


def main():
    print("🧠 hdlearn - Simple Classification Example")
    print("=" * 60)

    dataset = StandardBenchmarks.gaussian_blobs(seed=0)
    X_train, X_test, y_train, y_test = dataset.split(test_size=0.25, seed=0)

    print(f"📝 Dataset: {dataset.name}")
    print(f"   {dataset.description}")
    print(f"   Train rows: {len(y_train)}, test rows: {len(y_test)}")

    model = ClassificationModel(dim=10000, levels=10, retrain_epochs=3, seed=0)

    print(f"\n🚀 Fitting {model!r}...")
    model.fit(X_train, y_train, dataset.feature_names)

    print(f"\n📊 Results:")
    print("-" * 40)
    print(f"   ✅ Training accuracy: {model.score(X_train, y_train) * 100:.1f}%")
    print(f"   ✅ Test accuracy: {model.score(X_test, y_test) * 100:.1f}%")
    if model.retrain_history:
        print(f"   🔁 Retraining history: {[round(a, 3) for a in model.retrain_history]}")

    label, similarities = model.predict(X_test[0])
    print(f"\n🔍 First test row -> class {label} (true: {y_test[0]})")
    for cls, similarity in zip(model.classes, similarities):
        print(f"   • class {cls}: similarity {similarity:+.3f}")


if __name__ == "__main__":
    main()
