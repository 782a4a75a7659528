package app.core;

public class Part {
    String name() {
        return "part";
    }

    void attach(Part other, String label) {}

    Part self() {
        return this;
    }
}
